"""Fuzzy propositional interaction and configuration logic over De Morgan algebras."""

from .algebra import Algebra, AlgebraError, Classification, Element, check_laws, classify
from .archlib import master_slave_formula, p2p_formula, uncertainty
from .equivalence import (
    EquivVerdict,
    ResourceError,
    Verdict,
    cross_check,
    decide_equiv,
    nf_equal,
    oracle_equiv,
    oracle_equiv_fuzzy,
)
from .normalize import NormalizationMode, pcl_normal_form, pil_normal_form, to_set_rep
from .semantics import Configuration, Interaction, eval_closure, eval_pcl, eval_pil
from .syntax import ParseError, parse_pcl, parse_pil, print_formula

__version__ = "0.1.0"
