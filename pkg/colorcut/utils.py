from typing import Iterable, Tuple


class UnionFind(object):
    """
    Disjoint-set forest over the integers ``0 .. n-1`` with union by size
    and path compression.

    Attributes
    ----------
    parent: list of int
        Parent pointer of every element; roots point to themselves.
    size: list of int
        Size of the tree rooted at each root (stale for non-roots).
    components: int
        Current number of disjoint sets.
    """

    __slots__ = ("parent", "size", "components")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, element: int) -> int:
        parent = self.parent
        root = element
        while parent[root] != root:
            root = parent[root]

        while parent[element] != root:
            parent[element], element = root, parent[element]

        return root

    def union(self, first: int, second: int) -> bool:
        """
        Merges the sets containing ``first`` and ``second``.

        Returns
        -------
        bool
            True if two different sets were merged, False if both elements
            already shared a set.
        """

        root_first = self.find(first)
        root_second = self.find(second)
        if root_first == root_second:
            return False

        if self.size[root_first] < self.size[root_second]:
            root_first, root_second = root_second, root_first

        self.parent[root_second] = root_first
        self.size[root_first] += self.size[root_second]
        self.components -= 1
        return True

    def union_all(self, pairs: Iterable[Tuple[int, int]]) -> "UnionFind":
        for u, v in pairs:
            self.union(u, v)
        return self

    def connected(self, first: int, second: int) -> bool:
        return self.find(first) == self.find(second)

    def copy(self) -> "UnionFind":
        clone = UnionFind.__new__(UnionFind)
        clone.parent = self.parent.copy()
        clone.size = self.size.copy()
        clone.components = self.components
        return clone

    def __repr__(self):
        return f"UnionFind(n={len(self.parent)}, components={self.components})"


def iter_bits(mask: int) -> Iterable[int]:
    """Yields the positions of the set bits of ``mask`` in ascending order."""
    while mask:
        lowest = mask & -mask
        yield lowest.bit_length() - 1
        mask ^= lowest

