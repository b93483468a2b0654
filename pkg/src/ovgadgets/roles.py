"""Node role tags for gadget graphs.

Every node of a gadget graph carries exactly one role.  Roles are stored
compactly inside the graph (one kind code plus four integer parameters per
node) and materialized as :class:`Role` values on demand.  The meaning of the
parameter slots depends on the kind, see ``PARAM_NAMES``.

Sides are encoded as integers: 0 for the A side, 1 for the B side.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

SIDE_A = 0
SIDE_B = 1
SIDE_NAMES = {SIDE_A: "A", SIDE_B: "B"}


class RoleKind(IntEnum):
    VECTOR_ROOT = 0      # root a_r / b_r of a vector tree
    VECTOR_TREE = 1      # internal/leaf node of a vector tree
    COORD = 2            # coordinate node c_j (shared root of both c-trees)
    C_TREE = 3           # node of a c_A-tree or c_B-tree below c_j
    PATH = 4             # internal node of an inserted path
    SHORTCUT_ROOT = 5    # root of the A- or B-shortcut tree
    SHORTCUT_TREE = 6    # non-root node of a shortcut tree
    PATH_END = 7         # pendant endpoint a_p / b_p
    MID = 8              # middle node u of the reach-centrality path
    VECTOR = 9           # plain a / b node of the base OV-graph
    X = 10               # node x (root of the x-tree in the bounded build)
    Y = 11               # node y
    X_TREE = 12          # non-root node of the x-tree
    Y_TREE = 13          # non-root node of the y-tree
    B_PRIME = 14         # pendant b' node (second betweenness graph only)
    SPLIT_TWIN = 15      # twin produced by the degree-3 split


# Parameter-slot meaning per kind.  Unused slots are 0.
PARAM_NAMES = {
    RoleKind.VECTOR_ROOT: ("side", "index", "", "copy"),
    RoleKind.VECTOR_TREE: ("side", "index", "depth", "copy"),
    RoleKind.COORD: ("coord", "", "", "copy"),
    RoleKind.C_TREE: ("coord", "side", "depth", "copy"),
    RoleKind.PATH: ("path_id", "pos", "", "copy"),
    RoleKind.SHORTCUT_ROOT: ("side", "", "", "copy"),
    RoleKind.SHORTCUT_TREE: ("side", "", "depth", "copy"),
    RoleKind.PATH_END: ("side", "index", "", "copy"),
    RoleKind.MID: ("", "", "", ""),
    RoleKind.VECTOR: ("side", "index", "", ""),
    RoleKind.X: ("", "", "", ""),
    RoleKind.Y: ("", "", "", ""),
    RoleKind.X_TREE: ("", "", "depth", ""),
    RoleKind.Y_TREE: ("", "", "depth", ""),
    RoleKind.B_PRIME: ("index", "", "", ""),
    RoleKind.SPLIT_TWIN: ("origin", "twin", "", ""),
}


@dataclass(frozen=True)
class Role:
    kind: RoleKind
    p0: int = 0
    p1: int = 0
    p2: int = 0
    p3: int = 0

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.p0, self.p1, self.p2, self.p3)

    def describe(self) -> str:
        names = PARAM_NAMES[self.kind]
        parts = [
            f"{name}={SIDE_NAMES[val] if name == 'side' else val}"
            for name, val in zip(names, self.params)
            if name
        ]
        body = ", ".join(parts)
        return f"{self.kind.name.lower()}({body})" if body else self.kind.name.lower()


# landmark kinds must be unique per (side, index, copy) within one graph
LANDMARK_KINDS = frozenset(
    {
        RoleKind.VECTOR_ROOT,
        RoleKind.COORD,
        RoleKind.SHORTCUT_ROOT,
        RoleKind.PATH_END,
        RoleKind.MID,
        RoleKind.VECTOR,
        RoleKind.X,
        RoleKind.Y,
        RoleKind.B_PRIME,
    }
)
