"""Pure-Python versions of the hot kernels; must agree exactly with ``_kernels.pyx``."""


def rank_mod_p(rows, p):
    """Rank of an integer matrix reduced mod ``p`` (ordinary Gaussian elimination)."""
    m = [[v % p for v in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[col], -1, p)
        for r in range(rank + 1, len(m)):
            row = m[r]
            f = row[col]
            if f:
                f = f * inv % p
                for c in range(col, ncols):
                    row[c] = (row[c] - f * prow[c]) % p
        rank += 1
        if rank == len(m):
            break
    return rank


def count_identity_tuples(mult, n, classes, identity):
    """Count tuples ``(s_1, ..., s_w)`` with ``s_i in classes[i]`` whose product is ``identity``.

    ``mult`` is the flattened ``n x n`` multiplication table.  Exhaustive: the
    first ``w - 1`` entries are enumerated, the last one is forced.
    """
    w = len(classes)
    if w == 0:
        return 1
    inv = [0] * n
    for a in range(n):
        for b in range(n):
            if mult[a * n + b] == identity:
                inv[a] = b
                break
    last = set(classes[-1])
    target = [1 if inv[x] in last else 0 for x in range(n)]
    if w == 1:
        return target[identity]
    front = classes[:-2]
    penult = classes[-2]
    count = 0
    stack = [(0, identity)]
    while stack:
        level, prod = stack.pop()
        if level == len(front):
            base = prod * n
            for s in penult:
                count += target[mult[base + s]]
            continue
        base = prod * n
        for s in front[level]:
            stack.append((level + 1, mult[base + s]))
    return count
