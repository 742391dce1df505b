"""Decide the joint embedding property for regular languages of strings,
binary trees, unranked trees and cographs."""

from .config import DEFAULT_CAPS, Caps
from .errors import (
    AlphabetError,
    ArityError,
    InvalidCotree,
    InvalidEncoding,
    JepError,
    LabelMismatch,
    MissingP4,
    NotCograph,
    ParseError,
    SizeLimitExceeded,
    UnreachableGluingVertex,
)
from .dfa import Dfa, forb_string, format_dfa, parse_dfa, sup_string
from .trees import LabelSet, Tree, binary_contains, general_contains, leaf, node, parse_tree, to_sexpr
from .tree_automata import TreeAutomaton, forb_tree, format_ta, parse_ta, sup_tree, ta_union
from .string_jep import Verdict, decide_jep_string, joint_string, minimal_semibad_string
from .tree_jep import TreePipeline, decide_jep_tree, joint_tree, joint_witness
from .cographs import Cograph, Cotree, GraphVerdict, cotree_of, decide_jep_cographs, decide_jep_general

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
