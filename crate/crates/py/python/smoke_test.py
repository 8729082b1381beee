"""Smoke test for the linset extension module.

Build it with
    cargo build --release -p linset-py --features extension-module
and put target/release/liblinset.so on the path as linset.so, or run
    python crates/py/python/smoke_test.py target/release
which does that in a temporary directory.
"""

import itertools
import os
import shutil
import sys
import tempfile


def load(build_dir):
    tmp = tempfile.mkdtemp()
    shutil.copy(os.path.join(build_dir, "liblinset.so"), os.path.join(tmp, "linset.so"))
    sys.path.insert(0, tmp)
    import linset

    return linset


def gf2_mul(a, b, modulus_bits, n):
    # Schoolbook product in F_2[x] reduced by the modulus, as an oracle.
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> n & 1:
            a ^= modulus_bits
    return out


def span(field, basis):
    q = field.q
    elems = set()
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        acc = 0
        for c, b in zip(coeffs, basis):
            term = 0
            for _ in range(c):
                term = field.add(term, b)
            acc = field.add(acc, term)
        elems.add(acc)
    return elems


def main():
    linset = load(sys.argv[1] if len(sys.argv) > 1 else "target/release")

    f = linset.Field(2, 4)
    bits = sum(c << i for i, c in enumerate(f.modulus))
    for a in range(16):
        for b in range(16):
            assert f.mul(a, b) == gf2_mul(a, b, bits, 4)
        if a:
            assert f.mul(a, f.inv(a)) == 1
        assert f.frobenius(a, 4) == a

    f9 = linset.Field(3, 2)
    assert (f9.p, f9.q, f9.order) == (3, 3, 9)
    tr = linset.LinPoly.trace(f9)
    assert len(tr.kernel()) == 3
    assert all(tr(x) == f9.trace(x) for x in range(9))

    f8 = linset.Field(2, 3)
    basis = [1, 2]
    v = linset.LinPoly.subspace_poly(f8, basis)
    assert sorted(v.kernel()) == sorted(span(f8, basis))
    g = linset.LinPoly(f8, [3, 5, 1])
    quot, rem = g.divrem(v)
    assert (rem.degree or 0) < v.degree
    # g = quot o v + rem, so g and rem agree on the roots of v
    assert all(g(x) == rem(x) for x in v.kernel())

    report = linset.audit_map(f8, [1, 2, 4], g)
    assert report["congruence_ok"] and report["bound_ok"]
    assert all(report["checks"].values()), report["checks"]

    rows = linset.construct(f8, "plane-tight", 3)
    plane = linset.audit_subspace(f8, rows)
    assert plane["size"] == 7 and plane["bound"] == 7
    assert all(plane["checks"].values())

    f4 = linset.Field(2, 2)
    pts = linset.points(f4, [[1, 0], [0, 1]])
    assert len(pts) == 3 and all(w == 1 for _, w in pts)

    div = linset.redei_division(f4, [1, 2], linset.LinPoly.trace(f4))
    assert div["degX_H"] == 2 and div["ledger"]["rho_ok"]

    try:
        linset.Field(6, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("q = 6 must be rejected")

    print("smoke test ok")


if __name__ == "__main__":
    main()
