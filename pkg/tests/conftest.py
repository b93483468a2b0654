import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make the oracles importable

from ovgadgets import kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the BFS kernels once so individual tests time only their work."""
    kernels.warmup()


def build_labeled(n, edges):
    """A LabeledGraph from a plain (n, edge list) description."""
    from ovgadgets.graph import GraphBuilder
    from ovgadgets.roles import RoleKind

    b = GraphBuilder()
    for _ in range(n):
        b.new_node(RoleKind.PATH, 0, 0)
    for u, v in edges:
        b.add_edge(u, v)
    return b.build()
