#ifndef BKLAB_PETERSSON_HPP
#define BKLAB_PETERSSON_HPP

// Petersson Gram matrices over the standard fundamental domain
// {|x| <= 1/2, |z| >= 1} and their Cholesky orthonormalization.
//
// Entries <f_i, f_j> = int_F f_i conj(f_j) y^k dmu are computed by tensor
// Gauss-Legendre on the truncated region y <= Y (the x-interval at height
// y < 1 is clipped by the unit circle), plus the exact tail for y > Y where
// the x-integral collapses to the diagonal Fourier modes. Per-entry error
// estimates come from doubling both quadrature orders.

#include <Eigen/Dense>
#include <stdexcept>

#include "bklab/modforms.hpp"

namespace bklab {

struct QuadParams {
    int y_order = 20;       // Gauss-Legendre order per y panel
    int x_order = 0;        // 0: choose from the expansion's effective length
    double y_top = 0.0;     // 0: automatic, scaled to the integrand's peak height
    double panel_height = 1.0;
    bool estimate_error = true;  // re-run with doubled orders
};

struct GramMatrix {
    int weight = 0;
    Eigen::MatrixXd entries;
    Eigen::MatrixXd quad_error;  // node-doubling estimate, same shape
};

struct OrthonormalBasis {
    int weight = 0;
    Eigen::MatrixXd transform;  // lower triangular; transform * G * transform^T = I
    CuspBasis basis;

    int dim() const { return basis.dim(); }
};

struct NotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TailDominates : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Automatic truncation height for weight k: a multiple of the peak height
// (k-2)/(4 pi) of the diagonal integrand e^{-4 pi y} y^{k-2}.
double gram_y_top(int k);

GramMatrix gram(const CuspBasis& basis, const QuadParams& params = {});

// Inverse-Cholesky change of basis; residual ||T G T^t - I||_max checked
// against 1e-10.
OrthonormalBasis orthonormalize(const CuspBasis& basis, const GramMatrix& g);

// Convenience: basis + gram + orthonormalize at the recommended truncation,
// retrying once with refined quadrature if positivity fails.
OrthonormalBasis orthonormal_basis(int k, const QuadParams& params = {});

}  // namespace bklab

#endif  // BKLAB_PETERSSON_HPP
