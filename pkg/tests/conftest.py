import pytest

from ngpgrowth.graphs import NumberedGraph, fixture_names, load_fixture


def cycle(n, nums=2, prefix="v"):
    vs = [f"{prefix}{i}" for i in range(n)]
    if isinstance(nums, int):
        nums = [nums] * n
    return NumberedGraph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)], dict(zip(vs, nums)))


def complete(n, nums=2):
    vs = [f"k{i}" for i in range(n)]
    edges = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :]]
    return NumberedGraph(vs, edges, {v: nums for v in vs})


def empty(n, nums=2):
    vs = [f"e{i}" for i in range(n)]
    return NumberedGraph(vs, [], {v: nums for v in vs})


def single(n):
    return NumberedGraph(["v"], [], {"v": n})


def k33(nums=2):
    a = ["a0", "a1", "a2"]
    b = ["b0", "b1", "b2"]
    return NumberedGraph(a + b, [(x, y) for x in a for y in b], {v: nums for v in a + b})


def petersen(nums=2):
    o = [f"o{i}" for i in range(5)]
    i = [f"i{j}" for j in range(5)]
    edges = (
        [(o[j], o[(j + 1) % 5]) for j in range(5)]
        + [(o[j], i[j]) for j in range(5)]
        + [(i[j], i[(j + 2) % 5]) for j in range(5)]
    )
    return NumberedGraph(o + i, edges, {v: nums for v in o + i})


def path3():
    return NumberedGraph(["a", "b", "c"], [("a", "b"), ("b", "c")])


# small graphs covering every kind of input; used by the property suites
SMALL = {
    "single2": single(2),
    "single3": single(3),
    "single4": single(4),
    "single5": single(5),
    "single7": single(7),
    "k2_n3": complete(2, 3),
    "k2_mixed": NumberedGraph(["u", "v"], [("u", "v")], {"u": 2, "v": 5}),
    "p3": path3(),
    "c4": cycle(4),
    "c5": cycle(5),
    "k4": complete(4),
    "empty3": empty(3),
    "c5_n3": cycle(5, 3),
    "triangle_mixed": NumberedGraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")], {"a": 3, "b": 4, "c": 2}),
    "paw": NumberedGraph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")], {"a": 2, "b": 3, "c": 4, "d": 5}),
}


@pytest.fixture(params=fixture_names())
def bundled(request):
    return load_fixture(request.param)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
