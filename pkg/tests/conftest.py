from __future__ import annotations

import random

import pytest

from subtree_mean.graph import MultiGraph, is_connected

_acceptance_lines: list[str] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.module.__name__.endswith("test_acceptance"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance_lines.append(f"{'PASS' if rep.passed else 'FAIL'}  {doc}")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def random_connected_graph(rng: random.Random, n: int, p: float = 0.5) -> MultiGraph:
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = MultiGraph.from_edges(n, edges)
        if is_connected(g):
            return g


def random_multigraph(rng: random.Random, n: int, max_mult: int = 3) -> MultiGraph:
    edges = [(i, j, rng.randint(0, max_mult)) for i in range(n) for j in range(i + 1, n)]
    return MultiGraph.from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(20191105)
