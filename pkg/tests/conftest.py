import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

TITLES = {
    1: "closed-fiber restriction oracle",
    2: "truncation consistency",
    3: "invariance under the Schottky group",
    4: "a-period deltas",
    5: "second-kind b-period constants",
    6: "eta normalization and block form",
    7: "monodromy filtration and identity",
    8: "Tate multiplier",
    9: "polylog engine",
    10: "unipotent periods",
    11: "p-adic Li_1",
    12: "CLI determinism",
}
_RESULTS = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or report.failed:
        _RESULTS[k] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        terminalreporter.write_line("criterion %2d  %-40s %s" % (k, TITLES.get(k, ""), _RESULTS[k]))
