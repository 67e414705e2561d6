"""Enumerate data sets of cyclic surface actions and the roots of a Dehn twist they assemble into."""
from .core import (ConeDatum, DataSet, ValidationReport, canonical_form, genus, inverse_mod,
                   parse_data_set, trivial, turning_fraction, validate)
from .enumeration import (EnumerationQuery, a_spectrum, enumerate_data_sets, enumerate_for_genus,
                          genus_spectrum, iter_data_sets, oracle_enumerate)
from .pairing import (MaxDegree, RootClass, enumerate_root_classes, is_compatible_pair,
                      max_degree_for_genus, max_root_class, max_root_degree, pair_degree,
                      witness_pair)
from .bounds import (bound_U, bound_U_pair, bound_U_stable, verify_theorems)

__version__ = "0.1.0"
