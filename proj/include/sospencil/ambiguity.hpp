#pragma once
#include <utility>
#include <vector>

#include "sospencil/basis.hpp"
#include "sospencil/pencil.hpp"

namespace sospencil {

// All unordered pairs of homogenized basis positions whose exponent sum is
// beta. `mons` mirrors `pairs` with the actual exponent vectors so the pair
// set is self contained.
struct PairSet {
    MultiIndex beta;
    std::vector<std::pair<int, int>> pairs;  // 0-based positions, first <= second
    std::vector<std::pair<MultiIndex, MultiIndex>> mons;
};

// Lists pairs by ascending first member. Membership is equivalent to the box
// condition max(beta_k - n_k, 0) <= delta_k <= min(beta_k, n_k) on each slot
// together with total degree n0.
PairSet pairs_for_beta(const MonomialBasis& basis, const MultiIndex& beta);

// Multiplying member `member` of the source pair by z_plus/z_minus, and the
// other member by the reciprocal, produces the target pair.
struct ElementaryMove {
    int member = 0;
    int plus = 0;  // homogenized variable slots
    int minus = 0;
};

struct TreeEdge {
    int from = 0;  // indices into PairSet::pairs
    int to = 0;
    ElementaryMove move;
};

// Spanning tree of the single-move transformation graph, grown breadth-first
// from the first pair. The graph is connected for box-complete bases, so a
// disconnection is reported as an internal Error.
std::vector<TreeEdge> elementary_transform_tree(const PairSet& ps);

enum class AmbiguityKind { triple, quad };

// A basis matrix of the space of symmetric S with Psi S Psi^T = 0, scattered
// over 3 or 4 basis positions. The triple stencil is
//   [[0,0,-1],[0,2,0],[-1,0,0]]   on (zr^2 g, zr zl g, zl^2 g)
// and the quad stencil is
//   [[0,0,1,0],[0,0,0,-1],[1,0,0,0],[0,-1,0,0]]
//                                 on (zm g1, zn g1, zn g2, zm g2).
struct AmbiguityBasisElement {
    AmbiguityKind kind = AmbiguityKind::triple;
    MultiIndex beta;
    std::vector<int> support;
    Mat matrix;
};

// One element per spanning tree edge of every beta group with at least two
// pairs; per group the elements span the full (pair count - 1)-dimensional
// subspace.
std::vector<AmbiguityBasisElement> ambiguity_space_basis(const MonomialBasis& basis);

// Completes a valid last-variable ambiguity S_d (Psi S_d Psi^T = 0 and
// S_d * d^{n_d}Psi^T/dz_d^{n_d} = 0, both checked exactly) to a full pencil
// S(z) = S_0 + z_1 S_1 + ... + z_d S_d with S(z) Psi(z)^T = 0. Elements whose
// connecting move avoids z_d are instantiated from closed-form blocks; the
// rest go through an exact linear solve, and NotLiftableError is thrown when
// no symmetric completion exists.
MatrixPencil lift_ambiguity(const Mat& s_d, const MonomialBasis& basis,
                            const DegreeBounds& bounds);

// Replaces the last coefficient of a product polarization pencil by the given
// exact PSD Gram matrix of the partial Wronskian, preserving the polarization
// identity. a_d must satisfy Psi a_d Psi^T = W_d[q,p], the z_d derivative
// annihilation, and be positive semidefinite (all checked exactly).
MatrixPencil psd_repair(const MatrixPencil& b, const Poly& q, const Poly& p, const Mat& a_d);

}  // namespace sospencil
