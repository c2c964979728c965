"""Exact rational linear feasibility (phase-1 simplex, Bland's rule).

Used by front validation: a wiring-consistent event list is realizable by
honest sheet functions iff a finite system of exact linear constraints on
the sheet values at event positions is feasible.
"""

from fractions import Fraction


def feasible(n_vars, eqs, ges):
    """Is there x in Q^n with a.x == b for (a, b) in eqs and a.x >= b in ges?

    Constraint vectors a are dicts {var_index: coeff}.  Exact arithmetic;
    returns a bool.  Free variables are split into differences of
    nonnegative ones; phase-1 simplex with Bland's rule guarantees
    termination.
    """
    rows = [(dict(a), Fraction(b), "eq") for a, b in eqs]
    rows += [(dict(a), Fraction(b), "ge") for a, b in ges]
    n_ge = sum(1 for _, _, kind in rows if kind == "ge")
    ncols = 2 * n_vars + n_ge

    tableau = []
    bcol = []
    k = 0
    for a, b, kind in rows:
        row = [Fraction(0)] * ncols
        for j, c in a.items():
            row[2 * j] += Fraction(c)
            row[2 * j + 1] -= Fraction(c)
        if kind == "ge":
            row[2 * n_vars + k] = Fraction(-1)
            k += 1
        if b < 0:
            row = [-x for x in row]
            b = -b
        tableau.append(row)
        bcol.append(Fraction(b))

    m = len(tableau)
    total = ncols + m
    basis = []
    for i in range(m):
        tableau[i] = tableau[i] + [Fraction(int(t == i)) for t in range(m)]
        basis.append(ncols + i)

    # phase-1 objective: minimize the artificial sum; objective row =
    # sum of constraint rows restricted to non-artificial columns
    z = [Fraction(0)] * total
    zval = Fraction(0)
    for i in range(m):
        for j in range(total):
            z[j] += tableau[i][j]
        zval += bcol[i]

    while True:
        enter = next((j for j in range(ncols) if z[j] > 0), None)
        if enter is None:
            break
        leave = None
        ratio = None
        for i in range(m):
            if tableau[i][enter] > 0:
                r = bcol[i] / tableau[i][enter]
                if ratio is None or r < ratio or (
                        r == ratio and basis[i] < basis[leave]):
                    ratio, leave = r, i
        if leave is None:
            raise AssertionError("phase-1 objective unbounded")
        piv = tableau[leave][enter]
        tableau[leave] = [x / piv for x in tableau[leave]]
        bcol[leave] /= piv
        for i in range(m):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[leave])]
                bcol[i] -= f * bcol[leave]
        f = z[enter]
        z = [x - f * y for x, y in zip(z, tableau[leave])]
        zval -= f * bcol[leave]
        basis[leave] = enter

    return zval == 0
