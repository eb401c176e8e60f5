"""
Bounded breadth-first exploration of reduction graphs
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from patcalc.simulation.congruence import canonicalize
from patcalc.simulation.reduction import successors
from patcalc.utils.constants import Constants

logger = logging.getLogger(__name__)


class Success(str, Enum):
    YES = "Yes"
    NOT_WITHIN_BOUNDS = "NotWithinBounds"


class Truncation(str, Enum):
    DEPTH = "depth"
    NODES = "nodes"


@dataclass
class ReductionGraph:
    """
    States reachable from a root, up to structural congruence

    Node 0 is the root. Nodes are numbered in discovery order.

    Attributes:
        nodes (list[CanonicalForm]): States by id
        depths (list[int]): Shortest distance from the root
        edges (dict[int, list[int]]): Distinct successors found so far
        complete (set[int]): Nodes whose successors are all recorded
        labels (dict[tuple[int, int], Substitution]): Substitution of the
            first redex found for each edge
        truncation (Truncation | None): Which bound stopped exploration
        cycle_found (bool): Some node reaches itself
    """

    nodes: list = field(default_factory=list)
    depths: list = field(default_factory=list)
    edges: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)
    parents: dict = field(default_factory=dict)
    index: dict = field(default_factory=dict)
    complete: set = field(default_factory=set)
    truncation: Optional[Truncation] = None
    cycle_found: bool = False

    @property
    def truncated(self):
        return self.truncation is not None

    @property
    def root(self):
        return self.nodes[0]

    @property
    def success_nodes(self):
        return [i for i, node in enumerate(self.nodes) if node.has_success]

    def node_id(self, form):
        return self.index.get(form)

    def add_node(self, form, depth, parent=None):
        self.index[form] = len(self.nodes)
        self.nodes.append(form)
        self.depths.append(depth)
        if parent is not None:
            self.parents[len(self.nodes) - 1] = parent
        return len(self.nodes) - 1

    def add_edge(self, source, target, label):
        succ = self.edges.setdefault(source, [])
        if target not in succ:
            succ.append(target)
            self.labels[(source, target)] = label

    def successors(self, i):
        return self.edges.get(i, [])

    def expanded(self, i):
        return i in self.complete

    def edge_count(self):
        return sum(len(s) for s in self.edges.values())

    def path_to(self, i):
        """Node ids of a shortest path from the root to node i"""
        path = [i]
        while path[-1] in self.parents:
            path.append(self.parents[path[-1]])
        return list(reversed(path))

    def find_cycle(self):
        """
        Some cycle of the graph as a list of node ids, or an empty list

        Iterative depth-first search with white/grey/black colouring.
        """
        colour = {}
        for start in range(len(self.nodes)):
            if start in colour:
                continue
            colour[start] = 1
            stack = [(start, iter(self.successors(start)))]
            trail = [start]
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    colour[node] = 2
                    stack.pop()
                    trail.pop()
                    continue
                state = colour.get(nxt, 0)
                if state == 1:
                    return trail[trail.index(nxt):] + [nxt]
                if state == 0:
                    colour[nxt] = 1
                    stack.append((nxt, iter(self.successors(nxt))))
                    trail.append(nxt)
        return []

    def describe_path(self, i):
        """Printed states along a shortest path to node i"""
        return " -> ".join(str(self.nodes[j]) for j in self.path_to(i))

    def to_edge_list(self):
        """`id: form` lines followed by `edge: id -> id` lines"""
        lines = [f"{i}: {node}" for i, node in enumerate(self.nodes)]
        for source in sorted(self.edges):
            for target in self.edges[source]:
                lines.append(f"edge: {source} -> {target}")
        return "\n".join(lines) + "\n"

    def to_dot(self):
        lines = ["digraph reductions {"]
        for i, node in enumerate(self.nodes):
            label = str(node).replace("\\", "\\\\").replace('"', '\\"')
            shape = ", shape=doublecircle" if node.has_success else ""
            lines.append(f'  n{i} [label="{label}"{shape}];')
        for source in sorted(self.edges):
            for target in self.edges[source]:
                label = str(self.labels[(source, target)]).replace('"', '\\"')
                lines.append(f'  n{source} -> n{target} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_string(self):
        """Human readable trace"""
        output = f"states: {len(self.nodes)}\n"
        output += f"reductions: {self.edge_count()}\n"
        if self.truncated:
            output += f"truncated: {self.truncation.value} limit reached\n"
        if self.cycle_found:
            output += "cycle: yes\n"
        for i, node in enumerate(self.nodes):
            marker = "  (ok)" if node.has_success else ""
            output += f"[{i}] {node}{marker}\n"
            for target in self.successors(i):
                output += f"    -> [{target}] {self.labels[(i, target)]}\n"
        return output


class Explorer:
    """
    Breadth-first explorer of the reduction graph of one process

    Each call to `update` expands one more layer.

    Args:
        process (Process): Root process
        language (LanguageDescriptor): Its language
        depth_limit (int): Maximum number of reduction steps from the root
        node_limit (int): Maximum number of distinct states
    """

    def __init__(self, process, language, depth_limit=Constants.defaultDepth, node_limit=Constants.defaultNodes):
        if depth_limit < 1 or node_limit < 1:
            raise ValueError("exploration limits must be at least 1")
        self.m_language = language
        self.m_depth_limit = depth_limit
        self.m_node_limit = node_limit
        self.m_graph = ReductionGraph()
        self.m_graph.add_node(canonicalize(process), 0)
        self.m_frontier = deque([0])
        self.m_depth = 0

    def update(self):
        """
        Expand the next layer

        Returns:
            bool: Whether unexpanded states remain
        """
        graph = self.m_graph
        if not self.m_frontier:
            return False
        if self.m_depth >= self.m_depth_limit:
            for i in self.m_frontier:
                if successors(graph.nodes[i], self.m_language):
                    graph.truncation = Truncation.DEPTH
                    break
            self.m_frontier.clear()
            return False
        layer = deque()
        while self.m_frontier:
            i = self.m_frontier.popleft()
            for redex, succ in successors(graph.nodes[i], self.m_language):
                j = graph.node_id(succ)
                if j is None:
                    if len(graph.nodes) >= self.m_node_limit:
                        graph.truncation = Truncation.NODES
                        self.m_frontier.clear()
                        return False
                    j = graph.add_node(succ, self.m_depth + 1, parent=i)
                    layer.append(j)
                graph.add_edge(i, j, redex.substitution)
            graph.edges.setdefault(i, [])
            graph.complete.add(i)
        self.m_frontier = layer
        self.m_depth += 1
        logger.debug(f"depth {self.m_depth}: {len(graph.nodes)} states, {len(layer)} new")
        return bool(layer)

    def run(self, stop_on_success=False):
        """
        Explore until the graph is complete or a bound is hit

        Args:
            stop_on_success (bool): Stop once a state holding `ok` is found

        Returns:
            ReductionGraph: The explored graph
        """
        graph = self.m_graph
        while True:
            if stop_on_success and graph.success_nodes:
                break
            if not self.update():
                break
        graph.cycle_found = bool(graph.find_cycle())
        logger.info(
            f"explored {len(graph.nodes)} states and {graph.edge_count()} reductions"
            + (f", stopped by the {graph.truncation.value} limit" if graph.truncated else "")
        )
        return graph

    @property
    def graph(self):
        return self.m_graph

    @property
    def depth(self):
        return self.m_depth

    @property
    def language(self):
        return self.m_language

    def to_string(self):
        output = f"Language: {self.m_language}\n"
        output += f"Depth limit: {self.m_depth_limit}\n"
        output += f"Node limit: {self.m_node_limit}\n"
        output += self.m_graph.to_string()
        return output

    def save_to_file(self, path, date):
        """
        Save the exploration to a file

        Args:
            path (str): Path to save the file
            date (str): Current date as a string

        Returns:
            int: 0 on success, 1 on failure
        """
        try:
            with open(path, "w") as file:
                file.write(f"{Constants.programName}\n")
                file.write(f"{date}\n")
                file.write(f"----------\n")
                file.write(self.to_string())
            return 0
        except OSError as e:
            logger.error(f"Error saving exploration to {path}: {e}")
            return 1


def explore(process, language, depth_limit=Constants.defaultDepth, node_limit=Constants.defaultNodes):
    """Explore the whole reduction graph of a process within the limits"""
    return Explorer(process, language, depth_limit, node_limit).run()


def succeeds(process, language, depth_limit=Constants.defaultDepth, node_limit=Constants.defaultNodes):
    """
    Whether some reachable state holds `ok`

    Returns:
        Success: YES when found, NOT_WITHIN_BOUNDS when no such state was
        reached; this is a definite no only if exploration was not truncated
    """
    graph = Explorer(process, language, depth_limit, node_limit).run(stop_on_success=True)
    return Success.YES if graph.success_nodes else Success.NOT_WITHIN_BOUNDS
