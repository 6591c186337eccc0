"""The twelve acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line (printed immediately and repeated
in the terminal summary) before asserting, so a failing criterion still
reports what it saw.
"""
import json
import random
from itertools import product


from catcomp import fixtures as F
from catcomp.assemblies import check_gamma_delta_equiv, embed_Ft, gamma_delta_identity
from catcomp.bases import build_base_model, builtin_base
from catcomp.cli import main
from catcomp.errors import CatCompError
from catcomp.fincat import brute_force_universality, find_pullback
from catcomp.functors import (compose_nat_trans, compose_slice_arrows, identity_nat_trans,
                              identity_slice_arrow, preserves_pullbacks)
from catcomp.laws import image_functoriality_violations, simulation_algebra, tracking_closure_violations
from catcomp.models import build_partial_model, build_total_model, check_model_axioms
from catcomp.setcore import FinSet, TotalFn, pullback_sets
from catcomp.simulations import (compose_simulations, identity_simulation,
                                 simulation_from_nat_trans, simulation_from_slice_arrow)

from conftest import GOLDEN, ROOT
from test_cli import GOLDENS
from test_setcore import brute_force_set_universality

RESULTS = []


def verdict(n, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def fixtures():
    """The two (category, functor) pairs the criteria call "both fixtures"."""
    return [(F.cat2(), F.s2()), (F.diamond(), F.s_dia())]


def random_cospan(rng):
    c = FinSet(range(rng.randint(1, 3)))
    a = FinSet(range(rng.randint(0, 3)))
    b = FinSet(range(rng.randint(0, 3)))
    f = TotalFn(a, c, {x: rng.choice(c.elements) for x in a})
    g = TotalFn(b, c, {x: rng.choice(c.elements) for x in b})
    return f, g


def test_criterion_01_pullback_oracle():
    cat_failures = []
    checked = 0
    for c in (F.cat2(), F.mon2(), F.diamond()):
        for cs in c.cospans():
            pb = find_pullback(c, cs)
            if pb is not None:
                checked += 1
                if brute_force_universality(c, pb) is not None:
                    cat_failures.append((c.name, tuple(cs)))
    rng = random.Random(20240229)
    set_failures = 0
    for _ in range(20):
        f, g = random_cospan(rng)
        pb = pullback_sets(f, g)
        pairs = {(x, y) for x in f.dom for y in g.dom if f(x) == g(y)}
        ok = (len(pb.apex) == len(pairs)
              and {(pb.proj1(z), pb.proj2(z)) for z in pb.apex} == pairs
              and brute_force_set_universality(f, g, pb, max_z=2))
        set_failures += not ok
    verdict(1, "pullback oracle", not cat_failures and set_failures == 0 and checked > 0,
            f"{checked} category pullbacks, 20 Set cospans, failures {cat_failures or 0}/{set_failures}")


def _model_cases():
    for c, s in fixtures():
        yield f"CM^t({c.name};{s.name})", lambda c=c, s=s: build_total_model(c, s)
        yield f"CM^p({c.name};{s.name})", lambda c=c, s=s: build_partial_model(c, s)
        for kind in ("identities", "isos", "all_monos"):
            yield (f"CM^{kind}({c.name};{s.name})",
                   lambda c=c, s=s, k=kind: build_base_model(c, s, builtin_base(c, k)))


def test_criterion_02_model_axioms():
    required = {"CM^t(CAT2;S2)", "CM^p(DIAMOND;S_DIA)"} | {
        f"CM^{k}({c};{s})" for k in ("identities", "isos", "all_monos")
        for c, s in (("CAT2", "S2"), ("DIAMOND", "S_DIA"))}
    bad = []
    for label, build in _model_cases():
        if label not in required:
            continue
        try:
            rep = check_model_axioms(build())
            if not rep.ok:
                bad.append(f"{label}: {rep.laws_violated()}")
        except CatCompError as exc:
            bad.append(f"{label}: {type(exc).__name__}: {exc}")
    verdict(2, "model axioms CM1/CM2", not bad,
            f"{len(required) - len(bad)}/{len(required)} models pass" + "".join(f"; {b}" for b in bad))


def test_criterion_03_specializations():
    bad, checked = [], 0
    for c, s in fixtures():
        checked += 2
        try:
            if build_base_model(c, s, builtin_base(c, "identities")) != build_total_model(c, s):
                bad.append(f"CM^I({c.name}) != CM^t")
        except CatCompError as exc:
            bad.append(f"CM^I({c.name}): {exc}")
        try:
            if build_base_model(c, s, builtin_base(c, "all_monos")) != build_partial_model(c, s):
                bad.append(f"CM^Bmono({c.name}) != CM^p")
        except CatCompError as exc:
            bad.append(f"CM^Bmono/CM^p({c.name};{s.name}): {type(exc).__name__}: {exc}")
    verdict(3, "base specializations", not bad,
            f"{checked - len(bad)}/{checked} equalities hold" + "".join(f"; {b}" for b in bad))


def test_criterion_04_image_functoriality():
    c = F.diamond()
    checked, bad = image_functoriality_violations(c, F.s_dia(c))
    mut = F.s_dia_mutated(F.s_dia(c))
    mut_preserves = preserves_pullbacks(mut).ok
    _, mut_bad = image_functoriality_violations(c, mut)
    ok = checked > 0 and not bad and not mut_preserves and len(mut_bad) >= 1
    verdict(4, "image functoriality", ok,
            f"{checked} pairs clean on S_DIA, {len(mut_bad)} violations on the mutation")


def test_criterion_05_tracking_closure(workspace):
    total = 0
    bad = []
    for name, g in workspace.all("simulation"):
        pairs, viol = tracking_closure_violations(g)
        total += pairs
        bad += [(name, v["types"]) for v in viol]
    verdict(5, "tracking closure", total > 0 and not bad, f"{total} tracked pairs, {len(bad)} exceptions")


def test_criterion_06_gamma_delta():
    cases = [build_total_model(F.cat2(), F.s2(), name="CM^t(CAT2;S2)"),
             build_total_model(F.mon2(), F.hom_mon2(), name="CM^t(MON2;HOM_MON2)")]
    identity_ok = all(gamma_delta_identity(m) for m in cases)
    reports = [check_gamma_delta_equiv(m) for m in cases]
    equiv = [r.equivalent for r in reports]
    detail = "δ∘γ = ι on both; γ∘δ ~ ι verdicts " + ", ".join(
        f"{m.name}: {'equivalent' if r.equivalent else 'fails ' + str(r.failing())}"
        for m, r in zip(cases, reports))
    verdict(6, "delta_t after gamma_t and the gamma/delta equivalence", identity_ok and all(equiv), detail)


def test_criterion_07_embedding():
    rep = embed_Ft(F.cat2(), F.s2())
    s = F.s2()
    ok = rep.full and rep.injective_on_objects and s.injective_on_arrows() and rep.embedding
    verdict(7, "F^t full, injective on objects, embedding", ok, json.dumps(rep.to_json(), sort_keys=True))


def test_criterion_08_faithfulness():
    s = F.s2()
    m = build_total_model(s.source, s)
    g_id = simulation_from_nat_trans(identity_nat_trans(s), models=(m, m))
    g_swap = simulation_from_nat_trans(F.swap(s), models=(m, m))
    differ = g_id.realizes["a"] != g_swap.realizes["a"]
    again = simulation_from_nat_trans(F.swap(F.s2()), models=(m, m))
    verdict(8, "faithfulness of eta ↦ gamma_eta", differ and again == g_swap,
            f"realizes(a): {g_id.sorted_relation('a')} vs {g_swap.sorted_relation('a')}")


def test_criterion_09_functor_laws(workspace):
    checked, bad = 0, []
    nats = [n for _, n in workspace.all("nat-trans")]
    functors = [s for _, s in workspace.all("functor")]
    for s in functors:
        kinds = ["total"]
        try:
            build_partial_model(s.source, s)
            kinds.append("partial")
        except CatCompError:
            pass
        for kind in kinds:
            m = (build_total_model if kind == "total" else build_partial_model)(s.source, s)
            iota = identity_simulation(m)
            checked += 2
            if simulation_from_nat_trans(identity_nat_trans(s), kind, (m, m)) != iota:
                bad.append(f"identity η on {s.name} ({kind})")
            if simulation_from_slice_arrow(identity_slice_arrow(s), kind, (m, m)) != iota:
                bad.append(f"identity arrow on {s.name} ({kind})")
    nats += [identity_nat_trans(n.src) for n in nats] + [identity_nat_trans(n.tgt) for n in nats]
    for eta, theta in product(nats, repeat=2):
        if theta.tgt == eta.src:
            checked += 1
            lhs = simulation_from_nat_trans(compose_nat_trans(eta, theta))
            rhs = compose_simulations(simulation_from_nat_trans(eta), simulation_from_nat_trans(theta))
            if lhs != rhs:
                bad.append(f"{eta.name}∘{theta.name}")
    arrows = [w for _, w in workspace.all("slice-arrow")]
    arrows += [identity_slice_arrow(w.s) for w in arrows] + [identity_slice_arrow(w.t) for w in arrows]
    for g, f in product(arrows, repeat=2):
        if f.t == g.s:
            checked += 1
            lhs = simulation_from_slice_arrow(compose_slice_arrows(g, f))
            rhs = compose_simulations(simulation_from_slice_arrow(g), simulation_from_slice_arrow(f))
            if lhs != rhs:
                bad.append(f"{g.name}∘{f.name}")
    verdict(9, "functor laws for gamma", checked > 0 and not bad, f"{checked} instances, failures {bad or 0}")


def test_criterion_10_simulation_algebra(workspace):
    sims = workspace.all("simulation")
    counts, out = simulation_algebra(sims)
    failures = {k: v for k, v in out.items() if v}
    ok = len(sims) >= 3 and not failures and all(counts[k] > 0 for k in counts)
    verdict(10, "simulation algebra", ok, f"{len(sims)} simulations, counts {counts}, failures {failures or 0}")


def test_criterion_11_preservation_discrimination():
    s = F.s_dia()
    good = preserves_pullbacks(s)
    mut = F.s_dia_mutated(s)
    mut_table = dict(mut.mor("y_top").graph)
    bad = preserves_pullbacks(mut)
    named = ("x_top", "y_top") in [tuple(f["square"]["cospan"]) for f in bad.failing]
    ok = good.ok and not bad.ok and named and mut_table[0] == 2
    verdict(11, "preservation checker discrimination", ok,
            f"S_DIA {'passes' if good.ok else 'fails'}, mutation fails on (x_top, y_top): {named}")


def test_criterion_12_cli_determinism(tmp_path, monkeypatch):
    monkeypatch.chdir(ROOT)
    texts = []
    for k in range(2):
        out = tmp_path / f"laws{k}.json"
        main(["laws", "--stable", "--workspace", "fixtures/workspace", "--out", str(out)])
        texts.append(out.read_bytes())
    mismatched = []
    for name, argv in sorted(GOLDENS.items()):
        out = tmp_path / f"{name}.json"
        main(argv + ["--out", str(out)])
        golden = GOLDEN / f"{name}.json"
        if not golden.exists() or golden.read_bytes() != out.read_bytes():
            mismatched.append(name)
    ok = texts[0] == texts[1] and not mismatched
    verdict(12, "CLI determinism and goldens", ok,
            f"laws report {len(texts[0])} bytes twice; {len(GOLDENS)} goldens, mismatched {mismatched or 0}")
