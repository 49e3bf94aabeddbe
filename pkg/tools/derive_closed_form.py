"""Derive the electron-dressed coefficient matrix X_ij by symbolic trace algebra.

Each X_ij = Tr[(p3/+m) chi_i^mu (p1/+m) chibar_j^nu] * Tr[(p4/+M) g_mu (p2/+M) g_nu]
is reduced with the recursive trace theorem to a polynomial in scalar products.
The result is printed as Python source; ``emulaser.amplitude.closed_form_coefficients``
is a hand-grouped form of the same polynomials.  Needs sympy (not a runtime
dependency of the package).

Run:  python3 tools/derive_closed_form.py > /tmp/closed_form.py
"""
import functools
import itertools
import sys

import sympy as sp

m, M, A2, lam, al, be = sp.symbols("m M A2 lam al be")
VECS = ["p1", "p3", "p2", "p4", "k", "e1", "e2", "n"]
_FIXED = {
    ("k", "k"): 0, ("e1", "k"): 0, ("e2", "k"): 0, ("e1", "e2"): 0,
    ("e1", "e1"): A2, ("e2", "e2"): A2,
    ("p1", "p1"): m ** 2, ("p3", "p3"): m ** 2, ("p2", "p2"): M ** 2, ("p4", "p4"): M ** 2,
}
_FIXED = {tuple(sorted(key, key=VECS.index)): v for key, v in _FIXED.items()}
_SYMS = {}


def dot(x, y):
    key = tuple(sorted((x, y), key=VECS.index))
    if key in _FIXED:
        return _FIXED[key]
    if key not in _SYMS:
        _SYMS[key] = sp.Symbol(f"{key[0]}{key[1]}")
    return _SYMS[key]


@functools.lru_cache(maxsize=None)
def trace(items):
    if len(items) % 2:
        return sp.Integer(0)
    if not items:
        return sp.Integer(4)
    first, rest = items[0], items[1:]
    out = 0
    for j, v in enumerate(rest):
        d = dot(first, v)
        if d == 0:
            continue
        out += (-1) ** j * d * trace(rest[:j] + rest[j + 1:])
    return sp.expand(out)


def mul(*polys):
    out = [(sp.Integer(1), ())]
    for p in polys:
        out = [(c1 * c2, t1 + t2) for (c1, t1), (c2, t2) in itertools.product(out, p)]
    return out


def slashp(v, mass=None):
    return [(sp.Integer(1), (v,))] + ([(mass, ())] if mass is not None else [])


def chi(i, arg, bar=False):
    """Vertex piece contracted with vector arg; the charge is inside e1, e2."""
    if i == 0:
        return [(sp.Integer(1), (arg,)), (lam * dot("k", arg), ("k",))]
    e = f"e{i}"
    fwd, rev = (arg, "k", e), (e, "k", arg)
    if bar:
        return [(al, rev), (be, fwd)]
    return [(al, fwd), (be, rev)]


def tr_poly(poly):
    return sp.expand(sum(c * trace(t) for c, t in poly))


def electron_T(i, j, a, b):
    return tr_poly(mul(slashp("p3", m), chi(i, a), slashp("p1", m), chi(j, b, bar=True)))


def contract_n(expr):
    """Replace (n.x)(n.y) -> x.y and n.n -> 4 (expr is bilinear in n)."""
    nsyms = [s for key, s in _SYMS.items() if "n" in key]
    poly = sp.Poly(expr, *nsyms)
    out = 0
    for monom, coeff in poly.terms():
        factors = []
        for s, power in zip(nsyms, monom):
            factors += [s] * power
        nn = _SYMS.get(("n", "n"))
        if not (len(factors) == 2 or factors == [nn]):
            raise ValueError("expected bilinear dependence on n")
        pair = []
        four = False
        for s in factors:
            key = next(k for k, v in _SYMS.items() if v == s)
            if key == ("n", "n"):
                four = True
            else:
                pair.append(key[0] if key[1] == "n" else key[1])
        if four:
            out += 4 * coeff
        else:
            out += coeff * dot(pair[0], pair[1])
    return sp.expand(out)


def X(i, j):
    t_42 = electron_T(i, j, "p4", "p2")
    t_24 = electron_T(i, j, "p2", "p4")
    # L^{mu nu} g_{mu nu}: contract through the auxiliary vector n
    t_nn = contract_n(electron_T(i, j, "n", "n"))
    return sp.expand(4 * (t_42 + t_24 - (dot("p2", "p4") - M ** 2) * t_nn))


def main():
    pairs = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]
    names = ["C1", "C2", "C3", "C4", "C6", "C8"]
    exprs = []
    for (i, j) in pairs:
        x = X(i, j)
        # same charge-conjugation symmetry as the printed coefficients
        assert sp.expand(x - X(j, i)) == 0
        exprs.append(sp.collect(x, [lam, al, be, A2]))
    args = sorted({s.name for e in exprs for s in e.free_symbols})
    w = sys.stdout.write
    w('"""Generated by tools/derive_closed_form.py; do not edit by hand."""\n\n\n')
    w(f"def coefficient_polynomials({', '.join(args)}):\n")
    w('    """Return (C1, C2, C3, C4, C6, C8) as polynomials in scalar products."""\n')
    for name, e in zip(names, exprs):
        w(f"    {name} = {sp.pycode(e)}\n")
    w(f"    return {', '.join(names)}\n")


if __name__ == "__main__":
    main()
