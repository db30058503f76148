"""Cut-elimination machinery for propositional proof schemata.

Parse schema definitions, evaluate them at a parameter value, extract
characteristic clause-set terms from proofs, build refutation schemata by
saturation to top clause sets, and check every finite instance with an
independent SAT oracle.
"""
from .arith import Expr, parse_expr
from .dsl import DSLError, parse, print_env
from .env import DefEnv
from .formula import SchemaError

__all__ = ["DSLError", "DefEnv", "Expr", "SchemaError", "parse", "parse_expr", "print_env"]
__version__ = "0.1.0"
