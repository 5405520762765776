"""Two-particle quantum walk certificates for strongly regular graphs."""

__version__ = "0.1.0"

from .algebra import AlgebraCoeffs, exp_coefficients, power_coefficients, srg_spectrum, sum_rules
from .certificate import (
    ComparisonResult,
    GfCertificate,
    batch_min_delta,
    certificate,
    compare,
    delta,
    graph_certificate,
)
from .evolution import EvolutionOperator, SpectrumReport, evolve, green_functions, spectrum
from .graph import Graph, ParameterError, SrgParams, build_named, detect_srg, relabel
from .graph6 import Graph6Error, encode_graph6, parse_graph6
from .hamiltonians import (
    TwoParticleBasis,
    h_single,
    h_two_boson,
    h_two_fermion,
    h_two_hardcore,
    operator_form_boson,
    operator_form_fermion,
    walk_hamiltonian,
)
from .tables import boson_table, classify, count_40a, count_40b, fermion_table, verify_tables

__all__ = [
    "AlgebraCoeffs",
    "ComparisonResult",
    "EvolutionOperator",
    "GfCertificate",
    "Graph",
    "Graph6Error",
    "ParameterError",
    "SpectrumReport",
    "SrgParams",
    "TwoParticleBasis",
    "batch_min_delta",
    "boson_table",
    "build_named",
    "certificate",
    "classify",
    "compare",
    "count_40a",
    "count_40b",
    "delta",
    "detect_srg",
    "encode_graph6",
    "evolve",
    "exp_coefficients",
    "fermion_table",
    "graph_certificate",
    "green_functions",
    "h_single",
    "h_two_boson",
    "h_two_fermion",
    "h_two_hardcore",
    "operator_form_boson",
    "operator_form_fermion",
    "parse_graph6",
    "power_coefficients",
    "relabel",
    "spectrum",
    "srg_spectrum",
    "sum_rules",
    "verify_tables",
    "walk_hamiltonian",
]
