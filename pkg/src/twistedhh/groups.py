"""Finitely generated abelian grading groups and bicharacters.

A :class:`GradingGroup` is a sequence of cyclic factors, order 0 meaning a
copy of ZZ.  Storing the factors in sequence (instead of free part first)
makes direct sums plain concatenation, which the twisted tensor product
constructions lean on heavily.

A :class:`Bicharacter` t : A x B -> k^* is given by its values on the
canonical generator pairs and extended multiplicatively:

    t(a + a', b) = t(a, b) t(a', b),     t(a, b + b') = t(a, b) t(a, b').

On torsion generators the values must be roots of unity of the right order
for this extension to be well defined; ``validate`` checks exactly that.
"""

from itertools import product as iter_product

from .errors import GroupMismatch, TorsionIncompatible, ZeroInput


class GradingGroup:
    __slots__ = ("orders",)

    def __init__(self, free_rank=0, torsion_orders=(), orders=None):
        if orders is None:
            orders = (0,) * free_rank + tuple(torsion_orders)
        orders = tuple(int(n) for n in orders)
        for n in orders:
            if n != 0 and n < 2:
                raise ValueError(f"cyclic factor of order {n}")
        object.__setattr__(self, "orders", orders)

    def __setattr__(self, name, value):
        raise AttributeError("GradingGroup is immutable")

    @property
    def free_rank(self):
        return sum(1 for n in self.orders if n == 0)

    @property
    def torsion_orders(self):
        return tuple(n for n in self.orders if n)

    @property
    def ngens(self):
        return len(self.orders)

    def is_finite(self):
        return all(n != 0 for n in self.orders)

    def order(self):
        if not self.is_finite():
            raise ValueError("group is infinite")
        out = 1
        for n in self.orders:
            out *= n
        return out

    def element(self, coords):
        return GroupElement(self, coords)

    @property
    def zero(self):
        return GroupElement(self, (0,) * self.ngens)

    def generator(self, i):
        coords = [0] * self.ngens
        coords[i] = 1
        return GroupElement(self, coords)

    def elements(self):
        """All elements; only for finite groups."""
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")
        for coords in iter_product(*[range(n) for n in self.orders]):
            yield GroupElement(self, coords)

    def direct_sum(self, other):
        return GradingGroup(orders=self.orders + other.orders)

    def split(self, element, left_ngens):
        """Split an element of a direct sum back into its two halves."""
        left = GradingGroup(orders=self.orders[:left_ngens])
        right = GradingGroup(orders=self.orders[left_ngens:])
        return (GroupElement(left, element.coords[:left_ngens]),
                GroupElement(right, element.coords[left_ngens:]))

    def __eq__(self, other):
        return isinstance(other, GradingGroup) and other.orders == self.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        names = ["Z" if n == 0 else f"Z/{n}" for n in self.orders]
        return " + ".join(names) if names else "0"


class GroupElement:
    __slots__ = ("group", "coords")

    def __init__(self, group, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != group.ngens:
            raise GroupMismatch("coordinate length disagrees with the group")
        coords = tuple(c % n if n else c for c, n in zip(coords, group.orders))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatch("elements of different grading groups")

    def __add__(self, other):
        self._check(other)
        return GroupElement(self.group, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return GroupElement(self.group, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return GroupElement(self.group, [-a for a in self.coords])

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def concat(self, other):
        return GroupElement(self.group.direct_sum(other.group), self.coords + other.coords)

    def __eq__(self, other):
        return (isinstance(other, GroupElement) and other.group == self.group
                and other.coords == self.coords)

    def __hash__(self):
        return hash((self.group, self.coords))

    def __lt__(self, other):
        self._check(other)
        return self.coords < other.coords

    def __repr__(self):
        return repr(self.coords)


def group_add(x, y):
    return x + y


def group_neg(x):
    return -x


class Bicharacter:
    """t : A x B -> k^* from values on generator pairs.

    ``values[i][j]`` is t(e_i, f_j).  Construction validates the torsion
    compatibility conditions, so evaluation never has to re-check them.
    """

    __slots__ = ("left", "right", "field", "values")

    def __init__(self, left, right, field, values):
        values = tuple(tuple(row) for row in values)
        if len(values) != left.ngens or any(len(row) != right.ngens for row in values):
            raise GroupMismatch("generator value matrix has the wrong shape")
        for row in values:
            for v in row:
                if v.is_zero():
                    raise ZeroInput("bicharacter values must be nonzero")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "values", values)
        self.validate()

    def __setattr__(self, name, value):
        raise AttributeError("Bicharacter is immutable")

    def validate(self):
        for i, m in enumerate(self.left.orders):
            for j, n in enumerate(self.right.orders):
                v = self.values[i][j]
                if m and not (v ** m).is_one():
                    raise TorsionIncompatible(i, j, f"t(e_{i}, f_{j})^{m} != 1")
                if n and not (v ** n).is_one():
                    raise TorsionIncompatible(i, j, f"t(e_{i}, f_{j})^{n} != 1")
        return True

    def eval(self, a, b):
        if a.group != self.left or b.group != self.right:
            raise GroupMismatch("arguments do not match the bicharacter's groups")
        out = self.field.one
        for i, ai in enumerate(a.coords):
            if ai == 0:
                continue
            for j, bj in enumerate(b.coords):
                if bj:
                    out = out * self.values[i][j] ** (ai * bj)
        return out

    def inv_eval(self, a, b):
        return self.eval(a, b).inv()

    def character_from_right(self, b):
        """The character b-hat of A, a |-> t(a, b)."""
        if b.group != self.right:
            raise GroupMismatch("element does not lie in the right-hand group")
        return lambda a: self.eval(a, b)

    def character_from_left(self, a):
        """The character a-hat of B, b |-> t(a, b)."""
        if a.group != self.left:
            raise GroupMismatch("element does not lie in the left-hand group")
        return lambda b: self.eval(a, b)

    def flip(self):
        """The bicharacter B x A -> k^*, (b, a) |-> t(a, b)."""
        values = tuple(tuple(self.values[i][j] for i in range(self.left.ngens))
                       for j in range(self.right.ngens))
        return Bicharacter(self.right, self.left, self.field, values)

    def __repr__(self):
        return f"Bicharacter({self.left} x {self.right} -> {self.field})"


def bicharacter_eval(t, a, b):
    return t.eval(a, b)


def dual_character(t, b):
    return t.character_from_right(b)


def validate_bicharacter(t):
    return t.validate()


def trivial_bicharacter(left, right, field):
    one = field.one
    return Bicharacter(left, right, field,
                       [[one] * right.ngens for _ in range(left.ngens)])
