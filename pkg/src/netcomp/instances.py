"""Built-in example instances."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .function import TargetFunction, builtin
from .network import Edge, Network


def network_n1() -> Network:
    """Three sources, one relay ``v``; f = x1*x2 + x3 over the binary field."""
    edges = [
        Edge("e1", "1", "v"),
        Edge("e2", "2", "v"),
        Edge("e3", "3", "v"),
        Edge("e4", "1", "rho"),
        Edge("e5", "2", "rho"),
        Edge("e6", "3", "rho"),
        Edge("e7", "v", "rho"),
    ]
    return Network(["1", "2", "3", "v", "rho"], edges, ["1", "2", "3"], "rho", 2, "n1")


def network_n2() -> Network:
    """Sources 1 and 2 are fed by source 3; violates the no-incoming-edge rule."""
    edges = [
        Edge("e1", "3", "1"),
        Edge("e2", "1", "rho"),
        Edge("e3", "3", "2"),
        Edge("e4", "2", "rho"),
    ]
    return Network(["3", "1", "2", "rho"], edges, ["1", "2", "3"], "rho", 2, "n2")


def network_n2_prime() -> Network:
    edges = [
        Edge("e1", "3", "1'"),
        Edge("e2", "1'", "rho"),
        Edge("e3", "3", "2'"),
        Edge("e4", "2'", "rho"),
        Edge("1>1'", "1", "1'", infinite=True),
        Edge("2>2'", "2", "2'", infinite=True),
    ]
    return Network(
        ["3", "1", "1'", "2", "2'", "rho"], edges, ["1", "2", "3"], "rho", 2, "n2-prime"
    )


def two_source_tree(parallel: int = 1, name: str = "tree") -> Network:
    """Sources 1, 2 feed relay v, which has ``parallel`` edges to the sink."""
    edges = [Edge("a1", "1", "v"), Edge("a2", "2", "v")]
    edges += [Edge(f"b{i + 1}", "v", "rho") for i in range(parallel)]
    return Network(["1", "2", "v", "rho"], edges, ["1", "2"], "rho", 2, name)


def parallel_edges(count: int = 2, name: str = "parallel") -> Network:
    edges = [Edge(f"p{i + 1}", "1", "rho") for i in range(count)]
    return Network(["1", "rho"], edges, ["1"], "rho", 2, name)


@dataclass
class InstanceBundle:
    name: str
    network: Network
    function: TargetFunction
    code: object = None


def instance(name: str) -> InstanceBundle:
    if name == "n1":
        from .code import n1_rate_two_code

        return InstanceBundle(name, network_n1(), builtin("product-plus-mod2"), n1_rate_two_code())
    if name == "n2":
        return InstanceBundle(name, network_n2(), builtin("arithmetic-sum", s=3, q=2))
    if name == "n2-prime":
        return InstanceBundle(name, network_n2_prime(), builtin("arithmetic-sum", s=3, q=2))
    if name == "xor-tree":
        return InstanceBundle(name, two_source_tree(1, "xor-tree"), builtin("mod-sum", s=2, q=2))
    if name == "sum-tree":
        return InstanceBundle(name, two_source_tree(2, "sum-tree"), builtin("arithmetic-sum", s=2, q=2))
    if name == "sum-tree-single":
        return InstanceBundle(
            name, two_source_tree(1, "sum-tree-single"), builtin("arithmetic-sum", s=2, q=2)
        )
    if name == "parallel-mod2":
        return InstanceBundle(
            name, parallel_edges(2, "parallel-mod2"), builtin("mod-sum", s=1, q=4, mod=2)
        )
    raise InvalidInput(f"unknown instance {name!r}; choose from {', '.join(INSTANCE_NAMES)}")


INSTANCE_NAMES = ("n1", "n2", "n2-prime", "xor-tree", "sum-tree", "sum-tree-single", "parallel-mod2")
