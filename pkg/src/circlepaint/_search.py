"""Exact maximum-clique search on small graphs encoded as bitsets.

Branch and bound with a greedy colouring bound (Tomita-style). Used by the
brute-force checkers, never by the solver.
"""


def _colour_order(cand: int, adj: list[int]):
    order, bounds = [], []
    colour = 0
    uncoloured = cand
    while uncoloured:
        colour += 1
        avail = uncoloured
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            order.append(v)
            bounds.append(colour)
            uncoloured &= ~low
            avail &= ~low & ~adj[v]
    return order, bounds


def max_clique(adj: list[int]) -> int:
    """Return a maximum clique of the graph as a bitmask over vertex indices."""
    best = [0, 0]

    def expand(chosen: int, size: int, cand: int):
        order, bounds = _colour_order(cand, adj)
        for v, bound in zip(reversed(order), reversed(bounds)):
            if size + bound <= best[0]:
                return
            bit = 1 << v
            nxt = cand & adj[v]
            if nxt:
                expand(chosen | bit, size + 1, nxt)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, chosen | bit
            cand &= ~bit

    n = len(adj)
    if n:
        expand(0, 0, (1 << n) - 1)
    return best[1]


def complement(adj: list[int]) -> list[int]:
    full = (1 << len(adj)) - 1
    return [full & ~a & ~(1 << v) for v, a in enumerate(adj)]


def bits_to_indices(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits &= ~low
    return out
