"""Bol-Moufang homology of finite quasigroups."""
from .quasigroup import CayleyTable, parse_table, format_table, parastrophe, loop_class
from .identities import BmIdentity, parse_identity, satisfies, classify, variety_registry
from .homology import AbelianGroup, format_group, parse_group, smith_normal_form, h1, h2
from .boundary import d2_matrix, d3_matrix, verify_complex

__version__ = "0.1.0"

__all__ = [
    "CayleyTable", "parse_table", "format_table", "parastrophe", "loop_class",
    "BmIdentity", "parse_identity", "satisfies", "classify", "variety_registry",
    "AbelianGroup", "format_group", "parse_group", "smith_normal_form", "h1", "h2",
    "d2_matrix", "d3_matrix", "verify_complex",
]
