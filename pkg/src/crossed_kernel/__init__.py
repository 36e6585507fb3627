"""Free crossed complexes and resolutions: words, graph products, tensor
products, chain-level homology and extension enumeration."""

from .chains import ChainComplex, exactness_check, homology_over_Z, to_chain_complex
from .crossed import (ComplexError, CrossedComplex, CrsMorphism, Dim2Elem, ModuleElem,
                      abelianize2, apply_morphism, check_morphism, delta2, delta_n, eq2,
                      peiffer, validate_axioms)
from .extensions import (check_cocycle, cyclic_cocycle_check, enumerate_extensions,
                         extension_from_cocycle, is_isomorphic)
from .groups import (CyclicGroup, FiniteGroup, GraphProduct, GraphSpec, GroupRingElem,
                     direct_product, gp_normalize, named_group)
from .report import Report
from .resolutions import (cyclic_resolution, infinite_cyclic_resolution, standard_resolution)
from .tensor import TensorGen, bim_eval, graph_tensor, nerve_cliques, tensor_boundary, tensor_complex
from .words import FreeGroup, FreeHom, Word, apply_hom, fox_derivative, right_fox_derivative

__version__ = "0.1.0"
