# Global Constants
SEED = 42
DEFAULT_BUDGET = 10**7
BUDGET_ENV = "NASHFORGE_BUDGET"
DEFAULT_ORDER = 1
DEFAULT_CORE_DEPTH = 4
SCHEMA_VERSION = "report-v1"
BASE_FIELD_CAVEAT = "computed over non-closed base field"
# exit code for failures that are not a NashforgeError
INTERNAL_ERROR_EXIT = 5

# General-Purpose Libraries
import os
import sys
import re
import math
import json
import hashlib
import warnings
import itertools
import functools
from pathlib import Path
from fractions import Fraction
from dataclasses import dataclass, asdict
from timeit import default_timer as timer
import numpy as np

INFINITE = math.inf

# Exact algebra
from sympy import isprime
from sympy.polys.rings import PolyRing, PolyElement
from sympy.polys.domains import QQ, GF
from sympy.polys.orderings import grevlex, lex, ProductOrder
from sympy.polys.matrices import DomainMatrix


########################################################################################################################
# Errors
########################################################################################################################

class NashforgeError(ValueError):
    """Base class of every error nashforge raises on purpose. `exit_code` is what the CLI returns."""
    exit_code = 4
    hint = None

    def __str__(self):
        msg = super().__str__()
        return msg + (" (hint: %s)" % self.hint if self.hint else "")


class InputError(NashforgeError):
    exit_code = 4


class ParseError(InputError):
    def __init__(self, message:str, line:int=None, column:int=None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None: where.append("line %d" % line)
        if column is not None: where.append("column %d" % column)
        super().__init__(message + (" at " + ", ".join(where) if where else ""))

    def located(self, line:int):
        """Return a copy of this error pinned to `line` of the input file."""
        return ParseError(self.message, line=line, column=self.column)


class FieldMismatchError(InputError):
    pass


class PointNotOnVarietyError(InputError):
    pass


class CharacteristicError(InputError):
    pass


class UnsupportedScopeError(NashforgeError):
    exit_code = 2
    hint = "the requested certificate is only licensed for a narrower class of inputs"


class BudgetExceededError(NashforgeError):
    exit_code = 3
    hint = "raise --budget or %s" % BUDGET_ENV


class ConsistencyError(NashforgeError):
    exit_code = 1


########################################################################################################################
# Global variables, functions, and classes
########################################################################################################################

_budget_override = None


def get_budget():
    """Reduction-step budget: `set_budget` value if any, else the environment, else `DEFAULT_BUDGET`."""
    if _budget_override is not None:
        return _budget_override
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError("%s must be a positive integer, got %r" % (BUDGET_ENV, raw))
    if value <= 0:
        raise InputError("%s must be a positive integer, got %r" % (BUDGET_ENV, raw))
    return value


def set_budget(steps:int=None):
    """Override the budget for this process. `None` falls back to the environment again."""
    global _budget_override
    if steps is not None and int(steps) <= 0:
        raise InputError("budget must be a positive integer, got %r" % steps)
    _budget_override = None if steps is None else int(steps)


class StepCounter:
    """Counts reduction steps of one computation and raises `BudgetExceededError` past the budget."""
    def __init__(self, budget:int=None, what:str="computation"):
        self.budget = budget if budget else get_budget()
        self.steps = 0
        self.what = what

    def tick(self, n:int=1):
        self.steps += n
        if self.steps > self.budget:
            raise BudgetExceededError("%s exceeded the budget of %d reduction steps" % (self.what, self.budget))


def reset_rng(seed:int=SEED):
    """Fresh seeded generator for reproducible property checks."""
    return np.random.default_rng(seed)


def make_path(path:str):
    Path.mkdir(Path(path).parent, parents=True, exist_ok=True)
    return path


def log(msg:str, verbose:int=0, level:int=1):
    """Progress line on stderr, printed only when `verbose >= level`."""
    if verbose >= level:
        print(msg, file=sys.stderr)


def nchoosek(n:int, k:int):
    return math.comb(n, k) if 0 <= k <= n else 0


def count_monomials(nvars:int, degree:int):
    """Number of monomials of total degree <= `degree` in `nvars` variables, C(degree+nvars, nvars)."""
    return nchoosek(degree + nvars, nvars)


def sha256_text(text:str):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
