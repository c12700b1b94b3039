"""Elements of the universe N + Z and the three rays that partition it."""
from __future__ import annotations

from dataclasses import dataclass

NAT_RAY = 1
ZETA_RAY = 2

# Components (rays) of the universe: the copy of N, negative Z, non-negative Z.
NAT, ZNEG, ZPOS = 0, 1, 2
COMPS = (NAT, ZNEG, ZPOS)
COMP_NAMES = ("N", "Z-", "Z+")


@dataclass(frozen=True, order=True)
class MElement:
    """A point ``(ray, index)``; ray 1 is the copy of N, ray 2 the copy of Z."""

    ray: int
    index: int

    def __post_init__(self) -> None:
        if self.ray not in (NAT_RAY, ZETA_RAY):
            raise ValueError(f"ray must be 1 or 2, got {self.ray}")
        if self.ray == NAT_RAY and self.index < 0:
            raise ValueError("indices on the N ray are non-negative")

    @property
    def comp(self) -> int:
        if self.ray == NAT_RAY:
            return NAT
        return ZNEG if self.index < 0 else ZPOS

    def succ(self) -> MElement:
        return MElement(self.ray, self.index + 1)

    def pred(self) -> MElement | None:
        """Predecessor, or None for the zero of the N ray."""
        if self.ray == NAT_RAY and self.index == 0:
            return None
        return MElement(self.ray, self.index - 1)

    def shift(self, k: int) -> MElement:
        return MElement(self.ray, self.index + k)

    def sexpr(self) -> str:
        tag = "elemN" if self.ray == NAT_RAY else "elemZ"
        return f"({tag} {self.index})"

    def label(self) -> str:
        """Compact tag used inside relation names, e.g. ``N3`` or ``Z-2``."""
        return ("N" if self.ray == NAT_RAY else "Z") + str(self.index)

    def __str__(self) -> str:
        base = "0_M" if self.ray == NAT_RAY else "0_Z"
        if self.index == 0:
            return base
        return f"{base}{self.index:+d}"


ZERO_M = MElement(NAT_RAY, 0)
ZERO_Z = MElement(ZETA_RAY, 0)


def element_of(comp: int, index: int) -> MElement:
    """The element with ``index`` on component ``comp`` (index must fit the component)."""
    if comp == NAT:
        return MElement(NAT_RAY, index)
    if (comp == ZNEG) != (index < 0):
        raise ValueError(f"index {index} does not lie on component {COMP_NAMES[comp]}")
    return MElement(ZETA_RAY, index)


def on_comp(comp: int, index: int) -> bool:
    if comp == ZNEG:
        return index < 0
    return index >= 0


def comp_is_up(comp: int) -> bool:
    """True when the component extends towards +infinity."""
    return comp != ZNEG


def parse_label(text: str) -> MElement:
    """Inverse of :meth:`MElement.label`."""
    if not text or text[0] not in "NZ":
        raise ValueError(f"bad element label {text!r}")
    return MElement(NAT_RAY if text[0] == "N" else ZETA_RAY, int(text[1:]))
