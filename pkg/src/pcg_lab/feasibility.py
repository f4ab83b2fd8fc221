"""Exact linear feasibility over the rationals.

Decides whether a system  a_i . x >= b_i,  x >= 0  has a solution and,
if so, returns one exactly.  The engine is a phase-1 simplex with
integer pivoting (every tableau entry stays an integer subdeterminant,
divisions are exact) and Bland's anti-cycling rule, so the answer is
never subject to rounding and runs on plain Python ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .rational import as_fraction


def _integer_rows(rows):
    """Clear denominators so every constraint has integer coefficients."""
    cleaned = []
    for coeffs, rhs in rows:
        fracs = [as_fraction(c) for c in coeffs]
        rhs = as_fraction(rhs)
        denom = rhs.denominator
        for c in fracs:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        cleaned.append((
            [int(c * denom) for c in fracs],
            int(rhs * denom),
        ))
    return cleaned


def solve_geq_system(num_vars: int, rows) -> list[Fraction] | None:
    """Find x >= 0 with a.x >= b for every (a, b) row; None if infeasible.

    Rows may mix ints and Fractions.  The returned point is a basic
    solution of the system, all coordinates exact rationals.
    """
    rows = _integer_rows(rows)
    n_rows = len(rows)
    if n_rows == 0:
        return [Fraction(0)] * num_vars

    # columns: x (num_vars) | slack per row | artificial per positive-rhs row
    n_art = sum(1 for _, b in rows if b > 0)
    n_cols = num_vars + n_rows + n_art
    tableau = []          # integer matrix, one extra rhs entry per row
    basis = []            # basis variable (column index) per row
    art_cols = set()

    art_seen = 0
    for i, (coeffs, b) in enumerate(rows):
        row = [0] * (n_cols + 1)
        if b > 0:
            # a.x - s + y = b, basis y
            for j, c in enumerate(coeffs):
                row[j] = c
            row[num_vars + i] = -1
            art = num_vars + n_rows + art_seen
            art_seen += 1
            row[art] = 1
            row[-1] = b
            basis.append(art)
            art_cols.add(art)
        else:
            # -a.x + s = -b, basis s (rhs -b >= 0)
            for j, c in enumerate(coeffs):
                row[j] = -c
            row[num_vars + i] = 1
            row[-1] = -b
            basis.append(num_vars + i)
        tableau.append(row)

    if not art_cols:
        point = [Fraction(0)] * num_vars
        return point

    # phase-1 objective: drive the artificials to zero.  The objective
    # row is the sum of the artificial rows; its rhs tracks sum(y) * q.
    obj = [0] * (n_cols + 1)
    for i, b_col in enumerate(basis):
        if b_col in art_cols:
            row = tableau[i]
            for j in range(n_cols + 1):
                obj[j] += row[j]
    for col in art_cols:
        obj[col] = 0  # reduced cost of basic artificials is zero

    q = 1  # previous pivot value (integer pivoting invariant)
    while True:
        # Bland: entering column = smallest index with positive reduced cost
        enter = -1
        for j in range(n_cols):
            if obj[j] > 0:
                enter = j
                break
        if enter == -1:
            break
        # ratio test, ties broken by smallest basis variable (Bland)
        leave = -1
        best_num = best_den = None
        for i, row in enumerate(tableau):
            piv = row[enter]
            if piv > 0:
                num, den = row[-1], piv
                if (leave == -1
                        or num * best_den < best_num * den
                        or (num * best_den == best_num * den
                            and basis[i] < basis[leave])):
                    leave, best_num, best_den = i, num, den
        if leave == -1:
            # unbounded phase-1 objective cannot happen (bounded below by 0)
            raise RuntimeError("phase-1 ratio test failed")
        pivot_row = tableau[leave]
        p = pivot_row[enter]
        for i, row in enumerate(tableau):
            if i == leave:
                continue
            factor = row[enter]
            if factor == 0:
                if p != q:
                    for j in range(n_cols + 1):
                        row[j] = row[j] * p // q
                continue
            for j in range(n_cols + 1):
                row[j] = (row[j] * p - factor * pivot_row[j]) // q
        factor = obj[enter]
        for j in range(n_cols + 1):
            obj[j] = (obj[j] * p - factor * pivot_row[j]) // q
        basis[leave] = enter
        q = p

    if obj[-1] != 0:
        return None

    point = [Fraction(0)] * num_vars
    for i, b_col in enumerate(basis):
        if b_col < num_vars:
            point[b_col] = Fraction(tableau[i][-1], q)
    return point


def check_geq_system(num_vars: int, rows, point) -> bool:
    """Exact re-check that a point satisfies every a.x >= b row and x >= 0."""
    xs = [as_fraction(v) for v in point]
    if len(xs) != num_vars or any(v < 0 for v in xs):
        return False
    for coeffs, b in rows:
        total = sum(as_fraction(c) * x for c, x in zip(coeffs, xs))
        if total < as_fraction(b):
            return False
    return True
