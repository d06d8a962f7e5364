"""Rooted trees: parent-array representation, special families, canonical
enumeration of non-isomorphic rooted trees, and leaf deletion.

Vertices are indexed 0..n-1 internally; the root's parent is ``NO_PARENT``.
The external text format is 1-based with 0 marking the root, so a file
containing ``3`` / ``0 1 1`` is the 3-vertex star rooted at its centre.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import (
    CannotDeleteRoot,
    CycleDetected,
    IndexOutOfRange,
    InvalidOrder,
    MultipleRoots,
    NoRoot,
    NotALeaf,
    ParseError,
    ResourceLimit,
)

NO_PARENT = -1

#: Enumerating beyond this order is refused unless the caller raises the cap.
DEFAULT_ENUMERATION_CAP = 16
CAP_ENV_VAR = "LEVEL_SPECTRA_CAP"


def enumeration_cap() -> int:
    """Current enumeration cap (``LEVEL_SPECTRA_CAP`` overrides the default)."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_ENUMERATION_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{CAP_ENV_VAR} must be positive, got {cap}")
    return cap


class RootedTree:
    """Immutable rooted tree stored as a parent array.

    ``parent[i]`` is the parent index of vertex ``i``; exactly one vertex,
    the root, carries ``NO_PARENT``. Construction validates the whole
    structure, so every instance is a genuine rooted tree.
    """

    __slots__ = ("_parent", "_root")

    def __init__(self, parent):
        parent = tuple(int(p) for p in parent)
        n = len(parent)
        if n == 0:
            raise NoRoot("empty parent array")
        roots = [i for i, p in enumerate(parent) if p == NO_PARENT]
        if not roots:
            raise NoRoot("no root sentinel in parent array")
        if len(roots) > 1:
            raise MultipleRoots(f"vertices {roots} all have no parent")
        root = roots[0]
        for i, p in enumerate(parent):
            if i == root:
                continue
            if not 0 <= p < n:
                raise IndexOutOfRange(f"parent[{i}] = {p} is not a vertex index")
        # Walk each vertex to the root; a walk longer than n edges is a cycle.
        for i in range(n):
            v, steps = i, 0
            while v != root:
                v = parent[v]
                steps += 1
                if steps >= n:
                    raise CycleDetected(f"parent pointers cycle through vertex {i}")
        self._parent = parent
        self._root = root

    @property
    def n(self) -> int:
        return len(self._parent)

    @property
    def parent(self) -> tuple[int, ...]:
        return self._parent

    @property
    def root(self) -> int:
        return self._root

    def children(self) -> list[list[int]]:
        """Child lists per vertex, in increasing index order."""
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for i, p in enumerate(self._parent):
            if p != NO_PARENT:
                kids[p].append(i)
        return kids

    def leaves(self) -> list[int]:
        has_child = [False] * self.n
        for p in self._parent:
            if p != NO_PARENT:
                has_child[p] = True
        return [i for i in range(self.n) if not has_child[i]]

    def __eq__(self, other) -> bool:
        return isinstance(other, RootedTree) and self._parent == other._parent

    def __hash__(self) -> int:
        return hash(self._parent)

    def __repr__(self) -> str:
        return f"RootedTree(parent={list(self._parent)})"


def from_parent_list(parents, one_based: bool = True) -> RootedTree:
    """Build a validated tree from an external parent array.

    With ``one_based=True`` (the file format), vertices are numbered 1..n and
    the root's entry is 0. With ``one_based=False`` the array is taken as the
    internal convention (0-based, root entry ``NO_PARENT``).
    """
    parents = list(parents)
    if one_based:
        parents = [int(p) - 1 for p in parents]
    return RootedTree(parents)


def levels(tree: RootedTree) -> np.ndarray:
    """Distance from the root to each vertex, in one parent-before-child pass."""
    n = tree.n
    lev = np.zeros(n, dtype=np.int64)
    kids = tree.children()
    stack = [tree.root]
    while stack:
        v = stack.pop()
        for c in kids[v]:
            lev[c] = lev[v] + 1
            stack.append(c)
    return lev


def max_level(tree: RootedTree) -> int:
    return int(levels(tree).max())


# ---------------------------------------------------------------------------
# special families
# ---------------------------------------------------------------------------

def rooted_path(n: int) -> RootedTree:
    """Path on n vertices rooted at an endvertex."""
    if n < 1:
        raise InvalidOrder(f"need n >= 1, got {n}")
    return RootedTree([NO_PARENT] + list(range(n - 1)))


def rooted_star(n: int) -> RootedTree:
    """Star on n vertices rooted at its centre (all non-roots at level 1)."""
    if n < 1:
        raise InvalidOrder(f"need n >= 1, got {n}")
    return RootedTree([NO_PARENT] + [0] * (n - 1))


def star_rooted_at_leaf(n: int) -> RootedTree:
    """Star on n vertices rooted at a non-central vertex.

    Levels are 0 (root), 1 (centre), and 2 for the remaining n-2 leaves.
    """
    if n < 3:
        raise InvalidOrder(f"need n >= 3, got {n}")
    return RootedTree([NO_PARENT, 0] + [1] * (n - 2))


def complete_dary(d: int, height: int) -> RootedTree:
    """Rooted tree where every vertex above the last level has d children."""
    if d < 1:
        raise InvalidOrder(f"need d >= 1, got {d}")
    if height < 0:
        raise InvalidOrder(f"need height >= 0, got {height}")
    parent = [NO_PARENT]
    frontier = [0]
    for _ in range(height):
        nxt = []
        for v in frontier:
            for _ in range(d):
                parent.append(v)
                nxt.append(len(parent) - 1)
        frontier = nxt
    return RootedTree(parent)


# ---------------------------------------------------------------------------
# canonical form and enumeration
# ---------------------------------------------------------------------------

def canonical_level_sequence(tree: RootedTree) -> tuple[int, ...]:
    """Canonical encoding: the lexicographically largest DFS level sequence.

    Subtrees of every vertex are visited in non-increasing order of their own
    canonical sequences, which makes the result invariant under
    root-preserving isomorphism.
    """
    kids = tree.children()

    def encode(v: int, depth: int) -> tuple[int, ...]:
        parts = sorted((encode(c, depth + 1) for c in kids[v]), reverse=True)
        out = (depth,)
        for part in parts:
            out += part
        return out

    return encode(tree.root, 0)


def tree_from_level_sequence(seq) -> RootedTree:
    """Tree whose DFS level sequence is ``seq`` (parent = nearest shallower
    vertex to the left)."""
    seq = list(seq)
    if not seq or seq[0] != 0:
        raise InvalidOrder("level sequence must start at level 0")
    parent = [NO_PARENT]
    last_at_level = {0: 0}
    for i, lev in enumerate(seq[1:], start=1):
        if lev < 1 or lev > seq[i - 1] + 1:
            raise InvalidOrder(f"invalid level {lev} at position {i}")
        parent.append(last_at_level[lev - 1])
        last_at_level[lev] = i
    return RootedTree(parent)


def canonicalize(tree: RootedTree) -> RootedTree:
    """Canonical representative of the tree's isomorphism class."""
    return tree_from_level_sequence(canonical_level_sequence(tree))


def enumerate_rooted_trees(n: int, cap: int | None = None) -> Iterator[RootedTree]:
    """Yield one canonical representative per isomorphism class of rooted
    trees on ``n`` unlabeled vertices.

    Generates canonical level sequences directly, in decreasing lexicographic
    order, starting from the rooted path and ending at the rooted star. The
    successor rule truncates at the deepest vertex below level 1 and tiles the
    tail with copies of the block between that vertex's parent and the cut.
    """
    if n < 1:
        raise InvalidOrder(f"need n >= 1, got {n}")
    if cap is None:
        cap = enumeration_cap()
    if n > cap:
        raise ResourceLimit(
            f"enumeration of order {n} exceeds the cap of {cap}; "
            f"raise it via {CAP_ENV_VAR} or the cap argument"
        )
    seq = list(range(n))  # the rooted path
    while True:
        yield tree_from_level_sequence(seq)
        p = max((i for i in range(n) if seq[i] > 1), default=None)
        if p is None:
            return
        q = max(i for i in range(p) if seq[i] == seq[p] - 1)
        for i in range(p, n):
            seq[i] = seq[i - (p - q)]


@lru_cache(maxsize=None)
def rooted_tree_count(n: int) -> int:
    """Number of non-isomorphic rooted trees on n unlabeled vertices.

    Independent of the enumerator: uses the divisor-sum recurrence
    a(n+1) = (1/n) * sum_{k=1..n} (sum_{d|k} d*a(d)) * a(n-k+1).
    """
    if n < 1:
        raise InvalidOrder(f"need n >= 1, got {n}")
    if n == 1:
        return 1
    m = n - 1
    total = Fraction(0)
    for k in range(1, m + 1):
        divsum = sum(d * rooted_tree_count(d) for d in range(1, k + 1) if k % d == 0)
        total += Fraction(divsum * rooted_tree_count(m - k + 1))
    count = total / m
    assert count.denominator == 1
    return int(count)


# ---------------------------------------------------------------------------
# surgery
# ---------------------------------------------------------------------------

def delete_leaf(tree: RootedTree, v: int) -> RootedTree:
    """Remove leaf ``v``; surviving vertices keep their levels exactly."""
    if not 0 <= v < tree.n:
        raise IndexOutOfRange(f"vertex {v} out of range for n={tree.n}")
    if v == tree.root:
        raise CannotDeleteRoot("refusing to delete the root")
    if any(p == v for p in tree.parent):
        raise NotALeaf(f"vertex {v} has children")
    parent = []
    for i, p in enumerate(tree.parent):
        if i == v:
            continue
        parent.append(p - 1 if p > v else p)
    return RootedTree(parent)


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------

def is_rooted_path(tree: RootedTree) -> bool:
    return max_level(tree) == tree.n - 1


def is_rooted_star(tree: RootedTree) -> bool:
    return tree.n == 1 or max_level(tree) == 1


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def parse_tree(text: str) -> RootedTree:
    """Parse the tree file format: line 1 is n, line 2 the 1-based parent
    array with 0 marking the root."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("empty input, expected vertex count", line=1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"expected vertex count, got {lines[0].strip()!r}", line=1) from None
    if n < 1:
        raise ParseError(f"vertex count must be positive, got {n}", line=1)
    if len(lines) < 2 or not lines[1].strip():
        raise ParseError("missing parent array", line=2)
    fields = lines[1].split()
    if len(fields) != n:
        raise ParseError(f"expected {n} parent entries, got {len(fields)}", line=2)
    parents = []
    for col, field in enumerate(fields, start=1):
        try:
            parents.append(int(field))
        except ValueError:
            raise ParseError(f"bad parent entry {field!r}", line=2, column=col) from None
    try:
        return from_parent_list(parents, one_based=True)
    except (CycleDetected, MultipleRoots, NoRoot, IndexOutOfRange) as exc:
        raise ParseError(str(exc), line=2) from exc


def format_tree(tree: RootedTree) -> str:
    """Inverse of :func:`parse_tree`."""
    one_based = [0 if p == NO_PARENT else p + 1 for p in tree.parent]
    return f"{tree.n}\n{' '.join(str(p) for p in one_based)}\n"


def to_dot(tree: RootedTree) -> str:
    """GraphViz digraph with edges parent -> child; the root is annotated."""
    lines = ["digraph rooted_tree {"]
    lines.append(f'  v{tree.root + 1} [label="v{tree.root + 1} (root)", shape=doublecircle];')
    for i in range(tree.n):
        if i != tree.root:
            lines.append(f'  v{i + 1} [label="v{i + 1}"];')
    for i, p in enumerate(tree.parent):
        if p != NO_PARENT:
            lines.append(f"  v{p + 1} -> v{i + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
