###############################################################################
# tfac (C) tfac contributors 2026
#
# Global matrices of the mixed formulation: flux mass (sigma, w), divergence
# coupling (div w, v) and the block-diagonal scalar mass (u, v)
###############################################################################

from __future__ import annotations

from dataclasses import dataclass
import logging

import numpy as np
import scipy.sparse as sps

from tfac.mixed_space import MixedSpace
from tfac.triangle_mesh import TriangleMesh

logger = logging.getLogger(__name__)

###############################################################################
# Implementation
###############################################################################


@dataclass(frozen=True, eq=False)
class MixedForms:
    M_sigma: sps.csc_array
    """Flux mass matrix, n_sigma x n_sigma, symmetric positive definite"""

    B: sps.csc_array
    """Divergence matrix, n_u x n_sigma, B[p, i] = (div phi_i, v_p)"""

    M_u: sps.csc_array
    """Scalar mass matrix, n_u x n_u, block diagonal per element"""

    ###########################################################################

    @staticmethod
    def assemble_forms(mesh: TriangleMesh, space: MixedSpace) -> MixedForms:
        """
        Assemble the three matrices from element-local contributions merged
        by global index.

        :param mesh: Triangulation the space was built on.
        :type mesh: `TriangleMesh`

        :param space: Mixed space.
        :type space: `MixedSpace`

        :return: Assembled forms.
        :rtype: `MixedForms`
        """

        if space.mesh is not mesh:
            raise ValueError("The space was built on a different mesh")

        weights = space.quad_weights

        local_sigma = np.einsum(
            "tiqc,tjqc,tq->tij", space.flux_basis, space.flux_basis, weights
        )
        local_b = np.einsum(
            "tpq,tiq,tq->tpi", space.scalar_basis, space.flux_divergence, weights
        )

        M_sigma = MixedForms.__scatter(
            local_sigma, space.flux_dofs, space.flux_dofs, space.n_sigma, space.n_sigma
        )
        M_sigma = ((M_sigma + M_sigma.T) * 0.5).tocsc()

        B = MixedForms.__scatter(
            local_b, space.scalar_dofs, space.flux_dofs, space.n_u, space.n_sigma
        )
        M_u = MixedForms.__scatter(
            space.local_scalar_mass,
            space.scalar_dofs,
            space.scalar_dofs,
            space.n_u,
            space.n_u,
        )

        logger.debug(
            "Assembled forms: M_sigma nnz = %d, B nnz = %d", M_sigma.nnz, B.nnz
        )

        return MixedForms(M_sigma=M_sigma, B=B, M_u=M_u)

    ###########################################################################

    @staticmethod
    def __scatter(
        local: np.ndarray,
        row_dofs: np.ndarray,
        col_dofs: np.ndarray,
        n_rows: int,
        n_cols: int,
    ) -> sps.csc_array:
        rows_I = np.broadcast_to(row_dofs[:, :, None], local.shape)
        cols_J = np.broadcast_to(col_dofs[:, None, :], local.shape)

        return sps.coo_array(
            (local.ravel(), (rows_I.ravel(), cols_J.ravel())), shape=(n_rows, n_cols)
        ).tocsc()


###############################################################################
