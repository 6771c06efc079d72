import pytest

from ttp2.instance import gen_worst_case
from ttp2.model import decode_schedule

# Published n=8 example: "+tX" = away at tX, "-tX" = hosting tX.
TABLE1 = """\
-t3 -t4 +t3 +t4 -t5 -t6 +t5 +t6 -t7 +t2 -t8 +t7 +t8 -t2
-t4 -t3 +t4 +t3 -t6 -t5 +t6 +t5 -t8 -t1 +t7 +t8 -t7 +t1
+t1 +t2 -t1 -t2 +t7 -t8 -t7 +t8 -t5 +t4 -t6 +t5 +t6 -t4
+t2 +t1 -t2 -t1 +t8 -t7 -t8 +t7 -t6 -t3 +t5 +t6 -t5 +t3
+t7 +t8 -t7 -t8 +t1 +t2 -t1 -t2 +t3 +t6 -t4 -t3 +t4 -t6
+t8 +t7 -t8 -t7 +t2 +t1 -t2 -t1 +t4 -t5 +t3 -t4 -t3 +t5
-t5 -t6 +t5 +t6 -t3 +t4 +t3 -t4 +t1 +t8 -t2 -t1 +t2 -t8
-t6 -t5 +t6 +t5 -t4 +t3 +t4 -t3 +t2 -t7 +t1 -t2 -t1 +t7
"""

METRIC_SIZES = (8, 12, 16, 20, 24, 28, 32, 36, 40)


@pytest.fixture
def table1_text():
    return TABLE1


@pytest.fixture
def table1():
    return decode_schedule(TABLE1)


@pytest.fixture
def worst8():
    return gen_worst_case(8)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "LINES", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LINES:
        terminalreporter.write_line(line)
