"""The invariant suite run by ``catcomp laws``.

Each check yields :class:`LawResult` entries.  Severity ``law`` means a
stated property that must hold; ``finding`` records the verdict on a claim
that is conjectural or existential (a failure there is information, not a
defect).  The helpers are also used directly by the test-suite.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Any

from .assemblies import (canonical_assembly, check_fragment, check_gamma_delta_equiv, delta_t,
                         embed_Ft, gamma_delta_identity, model_over_fragment, tracks_function)
from .bases import (build_base_model, builtin_base, check_base, intersect_bases)
from .errors import CatCompError, MissingPullbackError, MonoPreservationError
from .fincat import (all_pullbacks, brute_force_is_mono, brute_force_universality,
                     has_all_pullbacks, is_mono, opposite, validate_category)
from .functors import (compose_nat_trans, compose_slice_arrows, identity_nat_trans,
                       identity_slice_arrow, preserves_pullbacks, validate_functor,
                       validate_nat_trans, validate_slice_arrow)
from .models import (build_partial_model, build_total_model, check_model_axioms,
                     compose_partial_morphisms, image_of_partial_morphism, partial_morphisms)
from .setcore import compose_partial_fn
from .simulations import (check_simulation, compose_simulations, identity_simulation,
                          is_transformable, simulation_from_nat_trans,
                          simulation_from_slice_arrow, tracks)

LAW = "law"
FINDING = "finding"


@dataclass
class LawResult:
    law: str
    subject: str
    ok: bool
    severity: str = LAW
    detail: Any = None

    def to_json(self):
        out = {"law": self.law, "subject": self.subject, "ok": self.ok, "severity": self.severity}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class LawsReport:
    results: list = field(default_factory=list)

    def add(self, law, subject, ok, severity=LAW, detail=None):
        self.results.append(LawResult(law, subject, bool(ok), severity, detail))

    @property
    def ok(self):
        return all(r.ok for r in self.results if r.severity == LAW)

    def failures(self):
        return [r for r in self.results if r.severity == LAW and not r.ok]

    def to_json(self):
        laws = [r for r in self.results if r.severity == LAW]
        findings = [r for r in self.results if r.severity == FINDING]
        return {
            "summary": {
                "laws": len(laws),
                "laws_failed": sum(not r.ok for r in laws),
                "findings": len(findings),
                "findings_negative": sum(not r.ok for r in findings),
            },
            "results": [r.to_json() for r in self.results],
        }


# ------------------------------------------------------------ reusable checks

def pullback_oracle_failures(c):
    """Universal cones returned by the search that the brute-force count rejects."""
    bad = []
    for cs in c.cospans():
        for pb in all_pullbacks(c, cs):
            verdict = brute_force_universality(c, pb)
            if verdict is not None:
                bad.append({"square": pb.to_json(), "oracle": list(verdict)})
    return bad


def mono_oracle_disagreements(c):
    return [m for m in c.morphism_names if bool(is_mono(c, m)) != brute_force_is_mono(c, m)]


def image_functoriality_violations(c, s, monos=None):
    """Composable partial-morphism pairs where ``S(pm2 ∘ pm1) ≠ S(pm2) ∘ S(pm1)``.

    Pairs whose composite needs a missing pullback are skipped; a
    non-injective ``S(i)`` counts as a violation.
    """
    family = monos or {a: c.monos_into(a) for a in c.objects}
    bad = []
    checked = 0
    for a, b, d in product(c.objects, repeat=3):
        for pm1 in partial_morphisms(c, a, b, family[a]):
            for pm2 in partial_morphisms(c, b, d, family[b]):
                try:
                    pm = compose_partial_morphisms(c, pm1, pm2)
                except MissingPullbackError:
                    continue
                checked += 1
                try:
                    lhs = image_of_partial_morphism(s, pm)
                    rhs = compose_partial_fn(image_of_partial_morphism(s, pm2),
                                             image_of_partial_morphism(s, pm1))
                except MonoPreservationError as exc:
                    bad.append({"pm1": pm1.to_json(), "pm2": pm2.to_json(), "error": str(exc)})
                    continue
                if lhs != rhs:
                    bad.append({"pm1": pm1.to_json(), "pm2": pm2.to_json(),
                                "composite": pm.to_json(),
                                "image_of_composite": [list(p) for p in lhs.graph],
                                "composite_of_images": [list(p) for p in rhs.graph]})
    return checked, bad


def tracking_closure_violations(g):
    """If ``f'`` tracks ``f`` and ``g'`` tracks ``g`` then ``g'∘f'`` tracks ``g∘f``; every tracker is tried."""
    src, tgt = g.src, g.tgt
    trackers = {}
    for s, t in product(src.type_names, repeat=2):
        for f in src.sorted_hom(s, t):
            trackers[(s, t, f)] = [fp for fp in tgt.sorted_hom(g.type_map[s], g.type_map[t])
                                   if tracks(g, fp, f, s, t)]
    bad = []
    pairs = 0
    for r, s, t in product(src.type_names, repeat=3):
        for f in src.sorted_hom(r, s):
            for h in src.sorted_hom(s, t):
                hf = compose_partial_fn(h, f)
                for fp in trackers[(r, s, f)]:
                    for hp in trackers[(s, t, h)]:
                        pairs += 1
                        if not tracks(g, compose_partial_fn(hp, fp), hf, r, t):
                            bad.append({"types": [r, s, t], "f": [list(p) for p in f.graph],
                                        "g": [list(p) for p in h.graph]})
    return pairs, bad


def _composable(d, g):
    return g.tgt is d.src or g.tgt == d.src


def _parallel(g, d):
    return (g.src is d.src or g.src == d.src) and (g.tgt is d.tgt or g.tgt == d.tgt)


def simulation_algebra(sims):
    """Associativity, units, reflexivity/transitivity of ⪯ and its compatibility
    with composition, over every applicable tuple of ``sims``."""
    out = {"associativity": [], "units": [], "reflexive": [], "transitive": [], "compatible": []}
    counts = dict.fromkeys(out, 0)
    for name, g in sims:
        counts["units"] += 1
        if compose_simulations(identity_simulation(g.tgt), g) != g or \
                compose_simulations(g, identity_simulation(g.src)) != g:
            out["units"].append(name)
        counts["reflexive"] += 1
        if not is_transformable(g, g):
            out["reflexive"].append(name)
    for (n1, f), (n2, g), (n3, h) in product(sims, repeat=3):
        if _composable(g, f) and _composable(h, g):
            counts["associativity"] += 1
            if compose_simulations(h, compose_simulations(g, f)) != \
                    compose_simulations(compose_simulations(h, g), f):
                out["associativity"].append([n1, n2, n3])
        if _parallel(f, g) and _parallel(g, h):
            if is_transformable(f, g) and is_transformable(g, h):
                counts["transitive"] += 1
                if not is_transformable(f, h):
                    out["transitive"].append([n1, n2, n3])
    below = {(n1, n2) for (n1, f), (n2, g) in product(sims, repeat=2)
             if _parallel(f, g) and is_transformable(f, g)}
    by_name = dict(sims)
    for (a1, a2), (b1, b2) in product(sorted(below), repeat=2):
        g, g2, d, d2 = by_name[a1], by_name[a2], by_name[b1], by_name[b2]
        if _composable(d, g):
            counts["compatible"] += 1
            if not is_transformable(compose_simulations(d, g), compose_simulations(d2, g2)):
                out["compatible"].append([a1, a2, b1, b2])
    return counts, out


# ------------------------------------------------------------ the suite

def _partial_applicable(c, s):
    return bool(has_all_pullbacks(c)) and bool(preserves_pullbacks(s))


def _category_laws(rep, name, c):
    val = validate_category(c)
    rep.add("category-axioms", name, val.ok, detail=None if val.ok else
            [v.to_json() for v in val.violations[:5]])
    if not val.ok:
        return False
    bad = pullback_oracle_failures(c)
    rep.add("pullback-universality-oracle", name, not bad, detail=bad or None)
    bad = mono_oracle_disagreements(c)
    rep.add("mono-oracle", name, not bad, detail=bad or None)
    rep.add("opposite-involution", name, opposite(opposite(c)) == c)
    if all(len(c.hom(a, b)) <= 1 for a in c.objects for b in c.objects):
        rep.add("poset-all-monos", name, len(c.monos) == len(c.morphisms))
    cover = has_all_pullbacks(c)
    rep.add("has-all-pullbacks", name, cover.ok, FINDING,
            [list(cs) for cs in cover.failing] or None)
    return True


def _functor_laws(rep, name, s, is_representable):
    val = validate_functor(s)
    rep.add("functor-axioms", name, val.ok, detail=None if val.ok else
            [v.to_json() for v in val.violations[:5]])
    if not val.ok:
        return
    c = s.source
    pres = preserves_pullbacks(s)
    rep.add("preserves-pullbacks", name, pres.ok, LAW if is_representable else FINDING,
            pres.to_json() if not pres.ok else None)
    if pres.ok:
        mono_ok = all(preserves_pullbacks(s, [pb]).ok for pb in pres.tested)
        rep.add("preservation-monotone", name, mono_ok)

    total = build_total_model(c, s)
    rep.add("total-model-axioms", name, check_model_axioms(total).ok and total.is_total)
    rep.add("base-I-equals-total", name, build_base_model(c, s, builtin_base(c, "identities")) == total)
    try:
        iso_model = build_base_model(c, s, builtin_base(c, "isos"))
        rep.add("base-Iso-model-axioms", name, check_model_axioms(iso_model).ok)
    except CatCompError as exc:
        rep.add("base-Iso-model-axioms", name, False, detail=str(exc))

    emb = embed_Ft(c, s)
    rep.add("Ft-full", name, emb.full, detail=emb.counterexamples.get("full"))
    rep.add("Ft-injective-on-objects", name, emb.injective_on_objects and emb.functorial)
    if s.injective_on_arrows():
        rep.add("Ft-embedding", name, emb.embedding)

    rep.add("delta-gamma-identity", name, gamma_delta_identity(total))
    eq = check_gamma_delta_equiv(total)
    rep.add("gamma-delta-equivalence", name, eq.equivalent, FINDING,
            {"failing": eq.failing()} if not eq.equivalent else None)

    if bool(has_all_pullbacks(c)):
        checked, bad = image_functoriality_violations(c, s)
        if pres.ok:
            partial = build_partial_model(c, s)
            rep.add("partial-model-axioms", name, check_model_axioms(partial).ok)
            rep.add("base-Bmono-equals-partial", name,
                    build_base_model(c, s, builtin_base(c, "all_monos")) == partial)
            rep.add("image-functoriality", name, not bad,
                    detail={"pairs": checked, "violations": bad[:3]} if bad else {"pairs": checked})
            femb = embed_Ft(c, s, builder=build_partial_model)
            rep.add("Fp-full", name, femb.full, FINDING)
        else:
            rep.add("image-functoriality-without-preservation", name, not bad, FINDING,
                    {"pairs": checked, "violations": bad[:3]})


def _nat_trans_laws(rep, nats):
    valid = []
    for name, n in nats:
        val = validate_nat_trans(n)
        rep.add("naturality", name, val.ok, detail=None if val.ok else
                [v.to_json() for v in val.violations[:5]])
        if not val.ok:
            continue
        valid.append((name, n))
        g = simulation_from_nat_trans(n)
        rep.add("gamma-eta-simulation", name, check_simulation(g).ok)
        c = n.src.source
        if _partial_applicable(c, n.src) and _partial_applicable(c, n.tgt):
            rep.add("gamma-eta-simulation-partial", name,
                    check_simulation(simulation_from_nat_trans(n, "partial")).ok)
    functors = []
    for _, n in valid:
        for s in (n.src, n.tgt):
            if all(s is not t and s != t for t in functors):
                functors.append(s)
    for s in functors:
        kinds = ["total"] + (["partial"] if _partial_applicable(s.source, s) else [])
        for kind in kinds:
            m = (build_total_model if kind == "total" else build_partial_model)(s.source, s)
            ok = simulation_from_nat_trans(identity_nat_trans(s), kind, (m, m)) == identity_simulation(m)
            rep.add(f"nat-trans-identity-law-{kind}", s.name, ok)
    for (n1, eta), (n2, theta) in product(valid, repeat=2):
        if theta.tgt == eta.src:
            composite = compose_nat_trans(eta, theta)
            ok = simulation_from_nat_trans(composite) == compose_simulations(
                simulation_from_nat_trans(eta), simulation_from_nat_trans(theta))
            rep.add("nat-trans-composition-law", f"{n1}∘{n2}", ok)
        if n1 < n2 and eta.src == theta.src and eta.tgt == theta.tgt:
            same = eta == theta
            sims_same = simulation_from_nat_trans(eta) == simulation_from_nat_trans(theta)
            rep.add("faithfulness", f"{n1},{n2}", same == sims_same)


def _slice_arrow_laws(rep, arrows):
    valid = []
    for name, w in arrows:
        val = validate_slice_arrow(w)
        rep.add("slice-arrow-valid", name, val.ok, detail=None if val.ok else val.to_json())
        if not val.ok:
            continue
        valid.append((name, w))
        rep.add("gamma-F-simulation", name, check_simulation(simulation_from_slice_arrow(w)).ok)
        rep.add("slice-arrow-preserves-monos", name, val.preserves_monos, FINDING,
                val.unpreserved_monos or None)
    seen = []
    for _, w in valid:
        for s in (w.s, w.t):
            if all(s != t for t in seen):
                seen.append(s)
    for s in seen:
        m = build_total_model(s.source, s)
        ok = simulation_from_slice_arrow(identity_slice_arrow(s), models=(m, m)) == identity_simulation(m)
        rep.add("slice-identity-law", s.name, ok)
    for (n1, g), (n2, f) in product(valid, repeat=2):
        if f.t == g.s:
            ok = simulation_from_slice_arrow(compose_slice_arrows(g, f)) == compose_simulations(
                simulation_from_slice_arrow(g), simulation_from_slice_arrow(f))
            rep.add("slice-composition-law", f"{n1}∘{n2}", ok)


def _base_laws(rep, ws, bases):
    for name, b in bases:
        rep.add("base-axioms", name, check_base(b).ok)
    by_cat = {}
    for name, b in bases:
        by_cat.setdefault(b.category, []).append((name, b))
    for group in by_cat.values():
        for (n1, b1), (n2, b2) in product(group, repeat=2):
            if n1 < n2 and check_base(b1).ok and check_base(b2).ok:
                rep.add("intersection-is-base", f"{n1}∩{n2}", check_base(intersect_bases(b1, b2)).ok,
                        FINDING)
    for fname, s in ws.all("functor"):
        if not validate_functor(s).ok:
            continue
        for name, b in by_cat.get(s.source, []):
            try:
                m = build_base_model(s.source, s, b)
                rep.add("base-model-axioms", f"{name}/{fname}", check_model_axioms(m).ok)
            except CatCompError as exc:
                rep.add("base-model-buildable", f"{name}/{fname}", False, FINDING, str(exc))


def _fragment_laws(rep, frags):
    for name, frag in frags:
        problems = check_fragment(frag)
        rep.add("fragment-is-category", name, not problems, detail=problems[:5] or None)
        untracked = [[x, y] for (x, y), hom in frag.homs.items()
                     for fn, tr in hom.items()
                     if not tracks_function(frag.by_name[x], frag.by_name[y], tr, fn)]
        rep.add("fragment-witness-trackers", name, not untracked, detail=untracked or None)
        over = model_over_fragment(frag)
        rep.add("fragment-model-total", name, check_model_axioms(over).ok and over.is_total)
        rep.add("delta-t-simulation", name, check_simulation(delta_t(frag, over)).ok)
        m = frag.model
        if m.is_total:
            canon = {t: canonical_assembly(m, t) for t in m.type_names}
            extra = [a for a in frag.assemblies if canon.get(a.name) != a]
            if not any(a.name in canon for a in extra):
                eq = check_gamma_delta_equiv(m, extra)
                rep.add("gamma-delta-equivalence-with-fragment", name, eq.equivalent, FINDING,
                        {"failing": eq.failing()} if not eq.equivalent else None)


def run_laws(ws):
    rep = LawsReport()
    for name, c in ws.all("category"):
        _category_laws(rep, name, c)
    for name, s in ws.all("functor"):
        doc = ws.document("functor", name) or {}
        if not validate_category(s.source).ok:
            continue
        _functor_laws(rep, name, s, doc.get("construction") == "hom")
    _nat_trans_laws(rep, ws.all("nat-trans"))
    _slice_arrow_laws(rep, ws.all("slice-arrow"))
    for name, m in ws.all("model"):
        rep.add("model-axioms", name, check_model_axioms(m).ok)
    sims = []
    for name, g in ws.all("simulation"):
        ok = check_simulation(g).ok
        rep.add("simulation-axioms", name, ok)
        if ok:
            pairs, bad = tracking_closure_violations(g)
            rep.add("tracking-closure", name, not bad,
                    detail={"pairs": pairs, "violations": bad[:3]} if bad else {"pairs": pairs})
            sims.append((name, g))
    counts, bad = simulation_algebra(sims)
    for law in ("associativity", "units", "reflexive", "transitive", "compatible"):
        rep.add(f"simulation-{law}", "workspace", not bad[law],
                detail={"instances": counts[law], "violations": bad[law][:3]})
    _base_laws(rep, ws, ws.all("base"))
    _fragment_laws(rep, ws.all("asm-fragment"))
    return rep
