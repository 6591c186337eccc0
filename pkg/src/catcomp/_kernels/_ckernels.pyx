# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernels``; same signatures, same results."""
from libc.stdint cimport int64_t
from libc.stdlib cimport calloc, free

BACKEND = "cython"


def assoc_violations(const int64_t[:] dom, const int64_t[:] cod, const int64_t[:, :] comp):
    cdef Py_ssize_t n = dom.shape[0]
    cdef Py_ssize_t f, g, h
    cdef int64_t gf, hg
    out = []
    for f in range(n):
        for g in range(n):
            if cod[f] != dom[g]:
                continue
            gf = comp[g, f]
            if gf < 0:
                continue
            for h in range(n):
                if cod[g] != dom[h]:
                    continue
                hg = comp[h, g]
                if hg < 0:
                    continue
                if comp[h, gf] != comp[hg, f]:
                    out.append((h, g, f))
    return out


def mono_witness(Py_ssize_t i, const int64_t[:] dom, const int64_t[:, :] comp,
                 const int64_t[:] hom_off, const int64_t[:] hom_flat, Py_ssize_t n_obj):
    cdef Py_ssize_t s = dom[i]
    cdef Py_ssize_t z, k, x, y, lo, hi
    for z in range(n_obj):
        k = z * n_obj + s
        lo = hom_off[k]
        hi = hom_off[k + 1]
        for y in range(lo, hi):
            for x in range(lo, y):
                if comp[i, hom_flat[x]] == comp[i, hom_flat[y]]:
                    return (hom_flat[x], hom_flat[y])
    return None


cdef void _cone_counts(Py_ssize_t f, Py_ssize_t g, const int64_t[:] dom,
                       const int64_t[:, :] comp, const int64_t[:] hom_off,
                       const int64_t[:] hom_flat, Py_ssize_t n_obj, int64_t* counts) noexcept:
    cdef Py_ssize_t a = dom[f], b = dom[g]
    cdef Py_ssize_t z, ka, kb, x, y
    cdef int64_t c
    for z in range(n_obj):
        ka = z * n_obj + a
        kb = z * n_obj + b
        c = 0
        for x in range(hom_off[ka], hom_off[ka + 1]):
            for y in range(hom_off[kb], hom_off[kb + 1]):
                if comp[f, hom_flat[x]] == comp[g, hom_flat[y]]:
                    c += 1
        counts[z] = c


cdef bint _universal(Py_ssize_t p, Py_ssize_t p1, Py_ssize_t p2, Py_ssize_t f, Py_ssize_t g,
                     const int64_t* counts, const int64_t[:, :] comp,
                     const int64_t[:] hom_off, const int64_t[:] hom_flat,
                     Py_ssize_t n_obj, Py_ssize_t n_mor, int64_t* stamp, int64_t* clock) noexcept:
    cdef Py_ssize_t z, k, x
    cdef int64_t m, c1, c2, slot
    for z in range(n_obj):
        k = z * n_obj + p
        if hom_off[k + 1] - hom_off[k] != counts[z]:
            return False
        clock[0] += 1
        for x in range(hom_off[k], hom_off[k + 1]):
            m = hom_flat[x]
            c1 = comp[p1, m]
            c2 = comp[p2, m]
            if c1 < 0 or c2 < 0 or comp[f, c1] != comp[g, c2]:
                return False
            slot = c1 * n_mor + c2
            if stamp[slot] == clock[0]:
                return False
            stamp[slot] = clock[0]
    return True


def pullback_cones(Py_ssize_t f, Py_ssize_t g, const int64_t[:] dom, const int64_t[:, :] comp,
                   const int64_t[:] hom_off, const int64_t[:] hom_flat, Py_ssize_t n_obj,
                   bint first_only):
    cdef Py_ssize_t n_mor = dom.shape[0]
    cdef Py_ssize_t a = dom[f], b = dom[g]
    cdef Py_ssize_t p, ka, kb, x, y, p1, p2
    cdef int64_t clock = 0
    cdef int64_t* counts = <int64_t*> calloc(n_obj + 1, sizeof(int64_t))
    cdef int64_t* stamp = <int64_t*> calloc(n_mor * n_mor + 1, sizeof(int64_t))
    if counts == NULL or stamp == NULL:
        free(counts)
        free(stamp)
        raise MemoryError()
    out = []
    try:
        _cone_counts(f, g, dom, comp, hom_off, hom_flat, n_obj, counts)
        for p in range(n_obj):
            ka = p * n_obj + a
            kb = p * n_obj + b
            for x in range(hom_off[ka], hom_off[ka + 1]):
                p1 = hom_flat[x]
                for y in range(hom_off[kb], hom_off[kb + 1]):
                    p2 = hom_flat[y]
                    if comp[f, p1] < 0 or comp[f, p1] != comp[g, p2]:
                        continue
                    if _universal(p, p1, p2, f, g, counts, comp, hom_off, hom_flat,
                                  n_obj, n_mor, stamp, &clock):
                        out.append((p, p1, p2))
                        if first_only:
                            return out
        return out
    finally:
        free(counts)
        free(stamp)


def is_universal_cone(Py_ssize_t p, Py_ssize_t p1, Py_ssize_t p2, Py_ssize_t f, Py_ssize_t g,
                      const int64_t[:] dom, const int64_t[:, :] comp,
                      const int64_t[:] hom_off, const int64_t[:] hom_flat, Py_ssize_t n_obj):
    cdef Py_ssize_t n_mor = dom.shape[0]
    cdef int64_t clock = 0
    cdef bint ok
    if comp[f, p1] < 0 or comp[f, p1] != comp[g, p2]:
        return False
    cdef int64_t* counts = <int64_t*> calloc(n_obj + 1, sizeof(int64_t))
    cdef int64_t* stamp = <int64_t*> calloc(n_mor * n_mor + 1, sizeof(int64_t))
    if counts == NULL or stamp == NULL:
        free(counts)
        free(stamp)
        raise MemoryError()
    try:
        _cone_counts(f, g, dom, comp, hom_off, hom_flat, n_obj, counts)
        ok = _universal(p, p1, p2, f, g, counts, comp, hom_off, hom_flat,
                        n_obj, n_mor, stamp, &clock)
        return bool(ok)
    finally:
        free(counts)
        free(stamp)
