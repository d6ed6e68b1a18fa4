#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slsq/matrix.hpp"

// Switched linear systems x' = A_i x + B_i u with per-mode linear feedback
// gains, exact trajectory propagation, and the system constants used by the
// coder-controller design arithmetic.

namespace slsq {

struct SwitchedLinearSystem {
    int d = 0; // state dimension
    int c = 0; // input dimension
    std::vector<Mat> A; // one d x d matrix per mode
    std::vector<Mat> B; // one d x c matrix per mode

    int mode_count() const { return static_cast<int>(A.size()); }
    void validate() const;
};

// u = K_i x. The general positively-homogeneous feedback of the problem
// statement is restricted to linear gains here; an extension would swap this
// type behind the same call sites.
struct FeedbackLaw {
    std::vector<Mat> K; // one c x d matrix per mode
};

struct StabilizabilityCertificate {
    double D = 1.0;   // overshoot, >= 1
    double mu1 = 0.0; // per-switch jump exponent, >= 0
    double mu2 = 0.0; // decay rate, > 0

    void validate() const;
};

struct SystemConstants {
    double nu = 0.0;     // max_i log_norm(A_i)
    double delta1 = 0.0; // max pairwise ||A_i - A_j||
    double delta2 = 0.0; // max pairwise ||B_i - B_j||
    double L = 0.0;      // max_i ||K_i||
};

SystemConstants system_constants(const SwitchedLinearSystem& sys, const FeedbackLaw& fb);

struct CertificateCheck {
    bool conclusive = false; // only the D=1, mu1=0 sufficient test is implemented
    bool passed = false;
    std::vector<double> margins; // -mu2 - log_norm(A_i + B_i K_i), per mode
};

// Sufficient log-norm test: if log_norm(A_i + B_i K_i) <= -mu2 for every mode,
// the closed loop contracts with D=1, mu1=0 under any switching signal.
CertificateCheck verify_certificate_lognorm(const SwitchedLinearSystem& sys,
                                            const FeedbackLaw& fb,
                                            const StabilizabilityCertificate& cert,
                                            double tol = 1e-9);

// Exact joint propagation over a constant-mode, constant-model segment:
// plant x' = A_true x + B_true K_model xhat, model xhat' = (A_model + B_model K_model) xhat.
std::pair<Vec, Vec> propagate_segment(const Mat& A_true, const Mat& B_true,
                                      const Mat& A_model, const Mat& B_model,
                                      const Mat& K_model,
                                      const Vec& x0, const Vec& xhat0, double dt);

// Block matrix of the augmented pair (x, xhat) above.
Mat augmented_generator(const Mat& A_true, const Mat& B_true,
                        const Mat& A_model, const Mat& B_model, const Mat& K_model);

// JSON document: {"modes":[{"A":[[...]],"B":[[...]],"K":[[...]]}, ...],
//                 "certificate":{"D":..,"mu1":..,"mu2":..}}
struct SystemBundle {
    SwitchedLinearSystem sys;
    FeedbackLaw fb;
    StabilizabilityCertificate cert;
};

SystemBundle parse_system_json(const std::string& text);
SystemBundle load_system_json(const std::string& path);
std::string system_to_json(const SystemBundle& b);

} // namespace slsq
