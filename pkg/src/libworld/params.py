"""Generation parameters and their validation."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


class ParamError(ValueError):
    """A generation parameter violates its invariant."""


@dataclass(frozen=True)
class GenParams:
    """Free parameters of room and layout generation.

    Lengths are meters. Defaults are chosen so a Gutenberg-scale catalog
    stays walkable: one shelf unit holds rows*slots_per_row = 100 books,
    and the fixed room depth is 2*shelf_depth + corridor = 3.0 m.
    """

    shelf_rows: int = 5
    slots_per_row: int = 20
    unit_width_m: float = 1.0
    shelf_depth_m: float = 0.3
    corridor_width_m: float = 2.4
    wall_margin_m: float = 0.5
    min_room_length_m: float = 4.0
    room_height_m: float = 3.0
    door_width_m: float = 1.2
    ccw: bool = False
    seed: int = 0
    # Inward compression can be disabled to measure its effect on the bbox.
    compress: bool = True

    # Doors need a physical frame: adjacency only counts when the shared
    # overlap fits door + jamb.
    DOOR_JAMB_M = 0.2

    @property
    def shelf_capacity(self) -> int:
        return self.shelf_rows * self.slots_per_row

    @property
    def room_depth_m(self) -> float:
        return 2.0 * self.shelf_depth_m + self.corridor_width_m

    @property
    def min_adjacency_overlap_m(self) -> float:
        return self.door_width_m + self.DOOR_JAMB_M

    def validate(self) -> None:
        for name in (
            "unit_width_m",
            "shelf_depth_m",
            "corridor_width_m",
            "wall_margin_m",
            "min_room_length_m",
            "room_height_m",
            "door_width_m",
        ):
            value = getattr(self, name)
            if not value > 0:
                raise ParamError(f"{name} must be > 0, got {value}")
        if self.shelf_rows <= 0 or self.slots_per_row <= 0:
            raise ParamError("shelf_rows and slots_per_row must be positive")
        if self.corridor_width_m < 1.5:
            raise ParamError(
                f"corridor_width_m must be >= 1.5 (walkability floor), got {self.corridor_width_m}"
            )

    def replace(self, **changes) -> "GenParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "GenParams":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})
