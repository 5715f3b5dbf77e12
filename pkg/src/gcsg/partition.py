"""Coalition structures: partitions of a node set into disjoint blocks.

The canonical form (blocks sorted ascending, ordered by smallest member)
makes structures comparable and hashable; the restricted-growth-string
code over the sorted ground set is the canonical DP-table key. Equal-value
optima are always tie-broken by smallest code.
"""

from .errors import (
    AgreementViolated,
    InputError,
    MalformedCode,
    NotSubset,
    TooLarge,
)
from .graph import induced_subgraph, connected_components

ENUMERATION_CAP = 20


class CoalitionStructure:
    """A partition of `ground` into non-empty blocks, kept in canonical form."""

    __slots__ = ("blocks", "ground")

    def __init__(self, blocks, ground):
        # internal: use from_blocks unless blocks are already canonical
        self.blocks = blocks
        self.ground = ground

    @classmethod
    def from_blocks(cls, blocks):
        canon = []
        seen = set()
        for b in blocks:
            bt = tuple(sorted(b))
            if not bt:
                raise InputError("coalition structure blocks must be non-empty")
            for x in bt:
                if x in seen:
                    raise InputError(f"node {x} appears in more than one block")
                seen.add(x)
            canon.append(bt)
        canon.sort(key=lambda b: b[0])
        return cls(tuple(canon), frozenset(seen))

    @classmethod
    def empty(cls):
        return cls((), frozenset())

    def block_sets(self):
        return [frozenset(b) for b in self.blocks]

    def block_of(self):
        """Map node -> index of its block."""
        owner = {}
        for k, b in enumerate(self.blocks):
            for x in b:
                owner[x] = k
        return owner

    def __eq__(self, other):
        if not isinstance(other, CoalitionStructure):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __repr__(self):
        inner = ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return "{" + inner + "}"


def restrict(p, s):
    """The induced structure over s: intersect every block, drop empties."""
    s = frozenset(s)
    if not s <= p.ground:
        raise NotSubset(f"{sorted(s - p.ground)} not in the structure's ground set")
    blocks = []
    for b in p.blocks:
        inter = tuple(x for x in b if x in s)
        if inter:
            blocks.append(inter)
    blocks.sort(key=lambda b: b[0])
    return CoalitionStructure(tuple(blocks), s)


def merge_union(p, q):
    """Union operator on two structures that agree on their common ground.

    Blocks of p and q are chained transitively wherever they intersect,
    via a disjoint-set pass over p.ground | q.ground. The agreement
    precondition (equal restrictions to the intersection) is checked
    first; the commuting-restriction postcondition is re-checked after,
    so a bug in the precondition check cannot slip through.
    """
    common = p.ground & q.ground
    rp = restrict(p, common)
    rq = restrict(q, common)
    if rp != rq:
        x, y = _disagreement_witness(rp, rq)
        raise AgreementViolated(
            f"structures disagree on their common ground: nodes {x} and {y} "
            f"are together in one operand and separated in the other")

    parent = {x: x for x in p.ground | q.ground}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for source in (p, q):
        for b in source.blocks:
            first = b[0]
            for x in b[1:]:
                rx, ry = find(first), find(x)
                if rx != ry:
                    parent[ry] = rx

    groups = {}
    for x in parent:
        groups.setdefault(find(x), []).append(x)
    result = CoalitionStructure.from_blocks(groups.values())

    if restrict(result, p.ground) != p or restrict(result, q.ground) != q:
        raise AgreementViolated(
            "merge result does not restrict back to its operands; "
            "the agreement check is inconsistent with the union pass")
    return result


def _disagreement_witness(rp, rq):
    op = rp.block_of()
    oq = rq.block_of()
    members = sorted(rp.ground)
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if (op[x] == op[y]) != (oq[x] == oq[y]):
                return x, y
    raise AssertionError("restrictions differ but no witness pair found")


def encode(p):
    """Restricted-growth string of p over its sorted ground set."""
    owner = p.block_of()
    code = []
    labels = {}
    for x in sorted(p.ground):
        k = owner[x]
        if k not in labels:
            labels[k] = len(labels)
        code.append(labels[k])
    return tuple(code)


def decode(code, ground):
    """Inverse of encode for a valid RGS over the given ground set."""
    members = sorted(ground)
    if len(code) != len(members):
        raise MalformedCode(
            f"code length {len(code)} does not match ground size {len(members)}")
    blocks = []
    mx = -1
    for x, c in zip(members, code):
        if not isinstance(c, int) or c < 0 or c > mx + 1:
            raise MalformedCode(f"position of node {x}: label {c!r} breaks the growth rule")
        if c == mx + 1:
            blocks.append([x])
            mx += 1
        else:
            blocks[c].append(x)
    return CoalitionStructure(tuple(tuple(b) for b in blocks), frozenset(members))


def enumerate_partitions(s):
    """Yield every partition of s once, in lexicographic RGS order.

    Streaming: only O(|s|) state is live per consumer.
    """
    members = sorted(frozenset(s))
    n = len(members)
    if n > ENUMERATION_CAP:
        raise TooLarge(f"refusing to enumerate partitions of {n} > {ENUMERATION_CAP} elements")
    ground = frozenset(members)
    if n == 0:
        yield CoalitionStructure((), ground)
        return

    blocks = [[members[0]]]

    def rec(t):
        if t == n:
            yield CoalitionStructure(tuple(tuple(b) for b in blocks), ground)
            return
        x = members[t]
        for b in blocks:
            b.append(x)
            yield from rec(t + 1)
            b.pop()
        blocks.append([x])
        yield from rec(t + 1)
        blocks.pop()

    yield from rec(1)


def bell_number(n):
    """Number of partitions of an n-element set (triangle recurrence)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def structure_value(g, v, p):
    """Total value of a structure: sum of the valuation over its blocks."""
    return sum(v(frozenset(b)) for b in p.blocks)


def split_connected(g, p):
    """Replace each block by the connected components it induces.

    Value-preserving for IDM valuations; this op only reshapes blocks.
    """
    blocks = []
    for b in p.blocks:
        sub = induced_subgraph(g, b)
        blocks.extend(connected_components(sub))
    return CoalitionStructure.from_blocks(blocks)
