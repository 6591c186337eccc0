"""Pure-Python search kernels over integer-indexed composition tables.

Conventions shared with the compiled twin:

* morphisms are ``0..n_mor-1``, objects ``0..n_obj-1``;
* ``comp[g][f]`` is the index of ``g∘f`` or ``-1`` when undefined;
* the hom-set ``Hom(a, b)`` is ``hom_flat[hom_off[a*n_obj+b]:hom_off[a*n_obj+b+1]]``,
  in ascending morphism order.
"""

BACKEND = "python"


def _lists(comp, hom_off, hom_flat):
    return comp.tolist(), hom_off.tolist(), hom_flat.tolist()


def assoc_violations(dom, cod, comp):
    """All triples (h, g, f) where both bracketings exist and disagree."""
    dom, cod, comp = dom.tolist(), cod.tolist(), comp.tolist()
    n = len(dom)
    out = []
    for f in range(n):
        for g in range(n):
            if cod[f] != dom[g]:
                continue
            gf = comp[g][f]
            if gf < 0:
                continue
            for h in range(n):
                if cod[g] != dom[h]:
                    continue
                hg = comp[h][g]
                if hg < 0:
                    continue
                if comp[h][gf] != comp[hg][f]:
                    out.append((h, g, f))
    return out


def mono_witness(i, dom, comp, hom_off, hom_flat, n_obj):
    """First pair g != h with i∘g = i∘h, or None when i is left-cancellable."""
    comp, hom_off, hom_flat = _lists(comp, hom_off, hom_flat)
    s = int(dom[i])
    row = comp[i]
    for z in range(n_obj):
        k = z * n_obj + s
        hs = hom_flat[hom_off[k]:hom_off[k + 1]]
        seen = {}
        for g in hs:
            v = row[g]
            if v in seen:
                return (seen[v], g)
            seen[v] = g
    return None


def _cone_counts(f, g, dom, comp, hom_off, hom_flat, n_obj):
    a, b = dom[f], dom[g]
    rf, rg = comp[f], comp[g]
    counts = []
    for z in range(n_obj):
        ka, kb = z * n_obj + a, z * n_obj + b
        left = [rf[c] for c in hom_flat[hom_off[ka]:hom_off[ka + 1]]]
        right = {}
        for c in hom_flat[hom_off[kb]:hom_off[kb + 1]]:
            right[rg[c]] = right.get(rg[c], 0) + 1
        counts.append(sum(right.get(v, 0) for v in left))
    return counts


def _universal(p, p1, p2, f, g, counts, comp, hom_off, hom_flat, n_obj):
    rp1, rp2, rf, rg = comp[p1], comp[p2], comp[f], comp[g]
    for z in range(n_obj):
        k = z * n_obj + p
        meds = hom_flat[hom_off[k]:hom_off[k + 1]]
        if len(meds) != counts[z]:
            return False
        seen = set()
        for m in meds:
            c1, c2 = rp1[m], rp2[m]
            if c1 < 0 or c2 < 0 or rf[c1] != rg[c2] or (c1, c2) in seen:
                return False
            seen.add((c1, c2))
    return True


def pullback_cones(f, g, dom, comp, hom_off, hom_flat, n_obj, first_only):
    """Universal cones (apex, proj1, proj2) over the cospan (f, g), in
    (apex, proj1, proj2) lexicographic order."""
    dom = dom.tolist()
    comp, hom_off, hom_flat = _lists(comp, hom_off, hom_flat)
    counts = _cone_counts(f, g, dom, comp, hom_off, hom_flat, n_obj)
    a, b = dom[f], dom[g]
    rf, rg = comp[f], comp[g]
    out = []
    for p in range(n_obj):
        ka, kb = p * n_obj + a, p * n_obj + b
        for p1 in hom_flat[hom_off[ka]:hom_off[ka + 1]]:
            for p2 in hom_flat[hom_off[kb]:hom_off[kb + 1]]:
                if rf[p1] != rg[p2] or rf[p1] < 0:
                    continue
                if _universal(p, p1, p2, f, g, counts, comp, hom_off, hom_flat, n_obj):
                    out.append((p, p1, p2))
                    if first_only:
                        return out
    return out


def is_universal_cone(p, p1, p2, f, g, dom, comp, hom_off, hom_flat, n_obj):
    dom = dom.tolist()
    comp, hom_off, hom_flat = _lists(comp, hom_off, hom_flat)
    if comp[f][p1] < 0 or comp[f][p1] != comp[g][p2]:
        return False
    counts = _cone_counts(f, g, dom, comp, hom_off, hom_flat, n_obj)
    return _universal(p, p1, p2, f, g, counts, comp, hom_off, hom_flat, n_obj)
