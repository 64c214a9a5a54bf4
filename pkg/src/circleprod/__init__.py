"""Exact tensor-algebra toolkit: Hopf structure, Laplace pairing, square and circle products."""

from .config import CapExceeded, Limits, limits, override_limits
from .hopf import (JointTensorSquare, TensorSquare, antipode, coproduct, counit,
                   joint_antipode, joint_coproduct, joint_counit)
from .laplace import laplace_closed, laplace_recursive, self_pairing
from .products import (NotProjected, PhiMatrix, SelfDualityRequired, circle_antisym,
                       circle_sym, joint_square, phi_antisym, phi_inverse, phi_matrix,
                       phi_sym, phi_tensor, self_square, square)
from .space import SpaceSpec, identity_space, load_space, make_space, pair_vectors, parse_space
from .symmetry import (antisymmetrize, polarization_expansion, power, sym_product,
                       symmetrize, wedge_product)
from .tensor import (Element, JointElement, SideError, concat_product, duality, e, embed, f,
                     grade_parts, joint_product, unit)

__version__ = "0.1.0"
