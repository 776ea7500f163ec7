"""Constructive Krull/Heitmann dimension toolkit.

Finite distributive lattices by Birkhoff duality, the three lattice
dimensions (Kdim, Jdim, Hdim), exact polynomial rings with Groebner
bases, Zariski-lattice boundary calculus with collapse certificates, and
certificate-producing generator-reduction theorems, all re-verifiable.
"""

from .posets import FinPoset
from .lattices import (FinDistLattice, LatElem, LatIdeal, LatFilter,
                       LatQuotientMap, downset_lattice, lattice_ops, quotient,
                       transporter, difference, heyting_implies, brouwer_minus,
                       negation, complement, jacobson_radical,
                       heitmann_lattice, boolean_closure, opposite,
                       GlueDiagram, glue)
from .latdim import (BoundarySpec, boundary_quotient, kdim, kdim_leq,
                     jdim_leq, hdim_leq, kdim_global_check,
                     heyting_dim_formula, brouwer_dim_formula, jdim, hdim,
                     generator_restricted_dim_check)
from .spectra import SpectralSubset, spec_subsets, subspace_lattice, glue_spectra
from .poly import Ring, Poly
from .groebner import (IdealRep, MembershipWitness, ideal_member,
                       radical_member, ideal_quotient, saturation, intersect)
from .zariski import (ZarElem, zar_leq, zar_eq, RadQuotientRing, DimCert,
                      krull_boundary_ideal, heitmann_boundary_ideal,
                      iterated_boundary, dim_cert_search, verify_dim_cert,
                      verify_complementary)
from .matrices import PolyMatrix, ElementaryOp, replay_script, module_member
from .certs import ReductionCert, verify_any
from .genred import (gcd_trick, kronecker_step, kronecker_reduce,
                     bass_stable_range, unimodular_to_e1,
                     kronecker_reduce_heitmann, multi_kronecker_heitmann)
from .splitoff import (swan_mainlemma, minor_step, matrix_combine, serre_split,
                       forster_swan_generate, bass_cancel)

__version__ = "0.1.0"
