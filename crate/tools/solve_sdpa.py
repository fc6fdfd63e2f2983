#!/usr/bin/env python3
"""Solve a sparse-SDPA (.dat-s) problem with Clarabel.

Usage: solve_sdpa.py program.dat-s [solution.txt] [--verbose]

Reads the standard primal form

    minimize    c' x
    subject to  X = sum_k F_k x_k - F_0  psd  (blockwise)

and reports SDPA-style result lines (objValPrimal / objValDual /
phase.value) on stdout and, when a second path is given, to that file.
Blocks with negative size in the header are diagonal and are handled as
elementwise nonnegativity.  Exit code is 0 when the solver reached
(almost-)optimality, 1 otherwise.
"""

import math
import sys

import clarabel
import numpy as np
from scipy import sparse


def parse_dat_s(path):
    """Return (m, block_sizes, c, entries) from a .dat-s file.

    entries is a list of (k, block, i, j, value) with 1-based block and
    matrix indices and k = 0 for the constant matrix.
    """
    tokens = []
    with open(path) as fh:
        for line in fh:
            stripped = line.strip()
            if not stripped or stripped.startswith(('"', '*', '//', '/*')):
                continue
            for ch in '{}(),':
                stripped = stripped.replace(ch, ' ')
            tokens.append(stripped.split())

    m = int(tokens[0][0])
    nblocks = int(tokens[1][0])
    sizes = [int(t) for t in tokens[2]]
    assert len(sizes) == nblocks, "block size list does not match nBLOCK"
    c = np.array([float(t) for t in tokens[3]])
    assert len(c) == m, "objective vector does not match mDIM"
    entries = []
    for tok in tokens[4:]:
        k, b, i, j = (int(t) for t in tok[:4])
        entries.append((k, b, i, j, float(tok[4])))
    return m, sizes, c, entries


def build_cone_problem(m, sizes, entries):
    """Assemble A, b, cones for Clarabel's form  A x + s = b,  s in K.

    Each block contributes s_block = svec(sum_k F_k x_k - F_0), so the
    block rows are A[:, k] = -svec(F_k) and b = -svec(F_0).  Clarabel's
    PSD triangle is the upper triangle stacked column-major with
    off-diagonal entries scaled by sqrt(2).
    """
    r2 = math.sqrt(2.0)
    offsets = []
    cones = []
    total = 0
    for s in sizes:
        offsets.append(total)
        if s < 0:
            cones.append(clarabel.NonnegativeConeT(-s))
            total += -s
        else:
            cones.append(clarabel.PSDTriangleConeT(s))
            total += s * (s + 1) // 2

    rows, cols, vals = [], [], []
    b = np.zeros(total)
    for k, blk, i, j, v in entries:
        size = sizes[blk - 1]
        if size < 0:
            assert i == j, "off-diagonal entry in a diagonal block"
            row = offsets[blk - 1] + i - 1
            scaled = v
        else:
            if i > j:
                i, j = j, i
            row = offsets[blk - 1] + j * (j - 1) // 2 + i - 1
            scaled = v if i == j else r2 * v
        if k == 0:
            b[row] = -scaled
        else:
            rows.append(row)
            cols.append(k - 1)
            vals.append(-scaled)

    A = sparse.csc_matrix((vals, (rows, cols)), shape=(total, m))
    return A, b, cones


def main(argv):
    args = [a for a in argv[1:] if not a.startswith('-')]
    verbose = '--verbose' in argv or '-v' in argv
    if not args:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    m, sizes, c, entries = parse_dat_s(args[0])
    A, b, cones = build_cone_problem(m, sizes, entries)

    settings = clarabel.DefaultSettings()
    settings.verbose = verbose
    settings.max_iter = 500
    P = sparse.csc_matrix((m, m))
    solver = clarabel.DefaultSolver(P, c, A, b, cones, settings)
    sol = solver.solve()

    status = str(sol.status)
    phase = {'Solved': 'pdOPT', 'AlmostSolved': 'pdFEAS'}.get(status, status)
    lines = [
        f'objValPrimal = {sol.obj_val:.12e}',
        f'objValDual = {sol.obj_val_dual:.12e}',
        f'phase.value = {phase}',
    ]
    report = '\n'.join(lines) + '\n'
    sys.stdout.write(report)
    if len(args) > 1:
        with open(args[1], 'w') as fh:
            fh.write(report)
    return 0 if status in ('Solved', 'AlmostSolved') else 1


if __name__ == '__main__':
    sys.exit(main(sys.argv))
