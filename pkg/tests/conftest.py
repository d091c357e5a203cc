import os
import sys

import pytest

from cihom.parsing import parse_map, parse_ring

HERE = os.path.dirname(__file__)
sys.path.insert(0, HERE)

DATA = os.path.join(os.path.dirname(HERE), "src", "cihom", "corpus_data")


def algebra(vars_, ideal="", field="Q"):
    text = f"field {field}\nvars {vars_}\n"
    if ideal:
        text += f"ideal {ideal}\n"
    return parse_ring(text).algebra()


def poly(A, text):
    from cihom.parsing import parse_polynomial
    return parse_polynomial(text, A.ring)


def ring_path(name):
    return os.path.join(DATA, "rings", name + ".ring")


def map_path(name):
    return os.path.join(DATA, "maps", name + ".map")


@pytest.fixture
def alg():
    return algebra


@pytest.fixture
def pol():
    return poly


def write_map(tmp_path, source, target, line, name="f.map"):
    """Write two ring files and a map between them into ``tmp_path``."""
    (tmp_path / "a.ring").write_text(source)
    files = "source a.ring\n"
    if target is not None:
        (tmp_path / "b.ring").write_text(target)
        files += "target b.ring\n"
    p = tmp_path / name
    p.write_text(files + line + "\n")
    return str(p)


def build_map(tmp_path, source, target, line):
    path = write_map(tmp_path, source, target, line)
    with open(path) as fh:
        return parse_map(fh.read(), source=path, base_dir=str(tmp_path)).build()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
