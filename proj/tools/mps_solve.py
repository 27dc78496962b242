#!/usr/bin/env python3
"""MILP solver driver: reads an MPS file, solves it with scipy's HiGHS
backend, and writes a plain-text solution file.

Usage: mps_solve.py MODEL.mps OUT.sol [TIME_LIMIT_S]

Output format (one token pair per line):
    status optimal|feasible|infeasible|timeout
    objective <value>
    gap <value>
    <column> <value>        # nonzero columns only
"""

import sys

import numpy as np
from scipy import sparse
from scipy.optimize import LinearConstraint, milp


def parse_mps(path):
    rows = []  # (name, sense)
    obj_row = None
    cols = []
    col_index = {}
    entries = []  # (row_name, col_idx, coef)
    obj = {}
    rhs = {}
    binaries = set()
    section = None
    with open(path) as fh:
        for line in fh:
            if not line.strip() or line.startswith("*"):
                continue
            if not line[0].isspace():
                tok = line.split()
                if tok[0] == "NAME":
                    continue
                section = tok[0]
                if section == "ENDATA":
                    break
                continue
            tok = line.split()
            if section == "ROWS":
                sense, name = tok
                if sense == "N":
                    obj_row = name
                else:
                    rows.append((name, sense))
            elif section == "COLUMNS":
                col = tok[0]
                if col not in col_index:
                    col_index[col] = len(cols)
                    cols.append(col)
                for k in range(1, len(tok) - 1, 2):
                    row, val = tok[k], float(tok[k + 1])
                    if row == obj_row:
                        obj[col_index[col]] = obj.get(col_index[col], 0.0) + val
                    else:
                        entries.append((row, col_index[col], val))
            elif section == "RHS":
                for k in range(1, len(tok) - 1, 2):
                    rhs[tok[k]] = float(tok[k + 1])
            elif section == "BOUNDS":
                if tok[0] == "BV":
                    binaries.add(tok[2])
    return rows, cols, col_index, entries, obj, rhs, binaries


def main():
    if len(sys.argv) < 3:
        print(__doc__, file=sys.stderr)
        return 2
    mps_path, sol_path = sys.argv[1], sys.argv[2]
    time_limit = float(sys.argv[3]) if len(sys.argv) > 3 else 600.0

    rows, cols, col_index, entries, obj, rhs, binaries = parse_mps(mps_path)
    n = len(cols)
    if n == 0:
        with open(sol_path, "w") as out:
            out.write("status optimal\nobjective 0\ngap 0\n")
        return 0
    c = np.zeros(n)
    for j, v in obj.items():
        c[j] = v

    row_index = {name: i for i, (name, _) in enumerate(rows)}
    m = len(rows)
    data, ri, ci = [], [], []
    for row, j, v in entries:
        data.append(v)
        ri.append(row_index[row])
        ci.append(j)
    a_mat = sparse.csr_matrix((data, (ri, ci)), shape=(m, n))
    lb = np.full(m, -np.inf)
    ub = np.full(m, np.inf)
    for i, (name, sense) in enumerate(rows):
        b = rhs.get(name, 0.0)
        if sense == "E":
            lb[i] = ub[i] = b
        elif sense == "L":
            ub[i] = b
        elif sense == "G":
            lb[i] = b

    integrality = np.array([1 if cols[j] in binaries else 0 for j in range(n)])
    bounds = [(0.0, 1.0) if cols[j] in binaries else (-np.inf, np.inf)
              for j in range(n)]
    from scipy.optimize import Bounds
    var_bounds = Bounds(np.array([b[0] for b in bounds]),
                        np.array([b[1] for b in bounds]))

    kwargs = dict(
        c=c,
        integrality=integrality,
        bounds=var_bounds,
        options={"time_limit": time_limit, "mip_rel_gap": 1e-9,
                 "presolve": True},
    )
    if m:
        kwargs["constraints"] = LinearConstraint(a_mat, lb, ub)
    res = milp(**kwargs)

    with open(sol_path, "w") as out:
        if res.status == 0:
            out.write("status optimal\n")
        elif res.status == 1:
            # limit reached; report the incumbent when there is one
            if res.x is None:
                out.write("status timeout\n")
                return 0
            out.write("status feasible\n")
        elif res.status == 2:
            out.write("status infeasible\n")
            return 0
        elif res.status == 3:
            # unbounded cannot happen for a bounded binary program
            out.write("status infeasible\n")
            return 0
        else:
            out.write("status not_found\n")
            return 0
        out.write(f"objective {res.fun:.12g}\n")
        gap = getattr(res, "mip_gap", 0.0) or 0.0
        out.write(f"gap {gap:.6g}\n")
        for j, v in enumerate(res.x):
            if abs(v) > 1e-9:
                out.write(f"{cols[j]} {v:.9g}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
