"""Independent brute-force oracles used to freeze expected test values.

Everything here is deliberately naive (cofactor expansion, word
enumeration, exhaustive search) and shares no code with the production
paths it checks.
"""

from fractions import Fraction


def det_cofactor(rows):
    """Determinant by recursive cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def brute_force_modp_solutions(matrix_rows, rhs, p):
    """All solution vectors of a linear system over F_p, by enumeration."""
    ncols = len(matrix_rows[0])
    sols = []
    vec = [0] * ncols

    def rec(i):
        if i == ncols:
            for row, b in zip(matrix_rows, rhs):
                if sum(r * v for r, v in zip(row, vec)) % p != b % p:
                    return
            sols.append(list(vec))
            return
        for x in range(p):
            vec[i] = x
            rec(i + 1)

    rec(0)
    return sols


def adjacency_path_counts(num_vertices, arrows, max_length):
    """Number of paths of each length <= max_length via adjacency powers.

    ``arrows`` is a list of (source, target) pairs; multiplicities count.
    """
    adj = [[0] * num_vertices for _ in range(num_vertices)]
    for s, t in arrows:
        adj[s][t] += 1
    counts = [num_vertices]
    power = [[1 if i == j else 0 for j in range(num_vertices)] for i in range(num_vertices)]
    for _ in range(max_length):
        nxt = [[sum(power[i][k] * adj[k][j] for k in range(num_vertices))
                for j in range(num_vertices)] for i in range(num_vertices)]
        power = nxt
        counts.append(sum(sum(row) for row in power))
    return counts


def monomial_normal_words(num_vertices, arrows, forbidden, max_length):
    """Normal-form words (paths avoiding every forbidden subword) by length.

    ``arrows`` is a list of (source, target); ``forbidden`` is a collection
    of arrow-index tuples (monomial relations).  Returns a list indexed by
    length; entry 0 holds the vertices as (vertex,) markers.
    """
    forb = set(tuple(f) for f in forbidden)

    def has_forbidden(word):
        for f in forb:
            L = len(f)
            for i in range(len(word) - L + 1):
                if word[i:i + L] == f:
                    return True
        return False

    by_len = [[("v", v) for v in range(num_vertices)]]
    cur = [((), v, v) for v in range(num_vertices)]  # (word, src, tgt)
    words = [cur]
    for _ in range(max_length):
        nxt = []
        for word, src, tgt in words[-1]:
            for ai, (s, t) in enumerate(arrows):
                if s == tgt:
                    w2 = word + (ai,)
                    if not has_forbidden(w2):
                        nxt.append((w2, src, t))
        words.append(nxt)
    return words


def cartan_counts_from_words(num_vertices, words):
    """Cartan matrix (c[i][j] = #normal words from j to i) from the output
    of :func:`monomial_normal_words`."""
    c = [[0] * num_vertices for _ in range(num_vertices)]
    for level in words:
        for _, src, tgt in level:
            c[tgt][src] += 1
    return c


def invert_2x2(rows):
    """Exact 2x2 inverse via the adjugate; None when singular."""
    (a, b), (c, d) = rows
    det = a * d - b * c
    if det == 0:
        return None
    return [[Fraction(d, det), Fraction(-b, det)],
            [Fraction(-c, det), Fraction(a, det)]]
