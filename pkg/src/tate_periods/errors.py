"""Exception hierarchy.  Every domain error carries a short machine code."""


class TatePeriodsError(Exception):
    code = "error"


class AlgebraError(TatePeriodsError):
    code = "algebra"


class GraphError(TatePeriodsError):
    code = "graph"


class SchottkyError(TatePeriodsError):
    code = "schottky"


class DifferentialError(TatePeriodsError):
    code = "differentials"


class PeriodError(TatePeriodsError):
    code = "periods"


class PolylogError(TatePeriodsError):
    code = "polylog"


class UnipotentError(TatePeriodsError):
    code = "unipotent"
