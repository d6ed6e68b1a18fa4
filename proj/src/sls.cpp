#include "slsq/sls.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace slsq {

void SwitchedLinearSystem::validate() const {
    if (d < 1 || c < 1) throw std::invalid_argument("system: d and c must be positive");
    if (A.empty() || A.size() != B.size())
        throw std::invalid_argument("system: need one (A, B) pair per mode");
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i].rows() != d || A[i].cols() != d)
            throw std::invalid_argument("system: A matrix has wrong shape");
        if (B[i].rows() != d || B[i].cols() != c)
            throw std::invalid_argument("system: B matrix has wrong shape");
        if (!all_finite(A[i]) || !all_finite(B[i]))
            throw std::invalid_argument("system: non-finite matrix entry");
    }
}

void StabilizabilityCertificate::validate() const {
    // D < 1 contradicts the decay bound at t = 0.
    if (!(D >= 1.0)) throw std::invalid_argument("certificate: D must be >= 1");
    if (!(mu1 >= 0.0)) throw std::invalid_argument("certificate: mu1 must be >= 0");
    if (!(mu2 > 0.0)) throw std::invalid_argument("certificate: mu2 must be > 0");
}

static void check_dims(const SwitchedLinearSystem& sys, const FeedbackLaw& fb) {
    sys.validate();
    if (fb.K.size() != sys.A.size())
        throw std::invalid_argument("feedback: need one gain per mode");
    for (const Mat& k : fb.K)
        if (k.rows() != sys.c || k.cols() != sys.d)
            throw std::invalid_argument("feedback: gain has wrong shape");
}

SystemConstants system_constants(const SwitchedLinearSystem& sys, const FeedbackLaw& fb) {
    check_dims(sys, fb);
    SystemConstants sc;
    sc.nu = log_norm(sys.A[0]);
    for (const Mat& a : sys.A) sc.nu = std::max(sc.nu, log_norm(a));
    const int nmodes = sys.mode_count();
    for (int i = 0; i < nmodes; ++i)
        for (int j = i + 1; j < nmodes; ++j) {
            sc.delta1 = std::max(sc.delta1, spectral_norm(sys.A[i] - sys.A[j]));
            sc.delta2 = std::max(sc.delta2, spectral_norm(sys.B[i] - sys.B[j]));
        }
    for (const Mat& k : fb.K) sc.L = std::max(sc.L, spectral_norm(k));
    return sc;
}

CertificateCheck verify_certificate_lognorm(const SwitchedLinearSystem& sys,
                                            const FeedbackLaw& fb,
                                            const StabilizabilityCertificate& cert,
                                            double tol) {
    check_dims(sys, fb);
    cert.validate();
    CertificateCheck r;
    if (cert.D != 1.0 || cert.mu1 != 0.0) return r; // inconclusive
    r.conclusive = true;
    r.passed = true;
    for (int i = 0; i < sys.mode_count(); ++i) {
        const double ln = log_norm(sys.A[i] + sys.B[i] * fb.K[i]);
        r.margins.push_back(-cert.mu2 - ln);
        if (!(ln <= -cert.mu2 + tol)) r.passed = false;
    }
    return r;
}

Mat augmented_generator(const Mat& A_true, const Mat& B_true,
                        const Mat& A_model, const Mat& B_model, const Mat& K_model) {
    const int d = A_true.rows();
    const Mat coupling = B_true * K_model;
    const Mat model_cl = A_model + B_model * K_model;
    Mat g(2 * d, 2 * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            g(i, j) = A_true(i, j);
            g(i, d + j) = coupling(i, j);
            g(d + i, d + j) = model_cl(i, j);
        }
    return g;
}

std::pair<Vec, Vec> propagate_segment(const Mat& A_true, const Mat& B_true,
                                      const Mat& A_model, const Mat& B_model,
                                      const Mat& K_model,
                                      const Vec& x0, const Vec& xhat0, double dt) {
    if (dt < 0.0) throw std::invalid_argument("propagate_segment: dt must be >= 0");
    const int d = A_true.rows();
    if (static_cast<int>(x0.size()) != d || static_cast<int>(xhat0.size()) != d)
        throw std::invalid_argument("propagate_segment: state size mismatch");
    const Mat phi = expm(dt * augmented_generator(A_true, B_true, A_model, B_model, K_model));
    Vec z(2 * d);
    for (int i = 0; i < d; ++i) {
        z[i] = x0[i];
        z[d + i] = xhat0[i];
    }
    const Vec z1 = phi * z;
    Vec x1(d), xhat1(d);
    for (int i = 0; i < d; ++i) {
        x1[i] = z1[i];
        xhat1[i] = z1[d + i];
    }
    return {x1, xhat1};
}

using nlohmann::json;

static Mat mat_from_json(const json& j) {
    const int rows = static_cast<int>(j.size());
    if (rows == 0) throw std::invalid_argument("json: empty matrix");
    const int cols = static_cast<int>(j.at(0).size());
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j.at(i).size()) != cols)
            throw std::invalid_argument("json: ragged matrix");
        for (int k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
    }
    return m;
}

static json mat_to_json(const Mat& m) {
    json j = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        j.push_back(std::move(row));
    }
    return j;
}

SystemBundle parse_system_json(const std::string& text) {
    const json j = json::parse(text);
    SystemBundle b;
    for (const json& mode : j.at("modes")) {
        b.sys.A.push_back(mat_from_json(mode.at("A")));
        b.sys.B.push_back(mat_from_json(mode.at("B")));
        b.fb.K.push_back(mat_from_json(mode.at("K")));
    }
    b.sys.d = b.sys.A.at(0).rows();
    b.sys.c = b.sys.B.at(0).cols();
    const json& cert = j.at("certificate");
    b.cert.D = cert.at("D").get<double>();
    b.cert.mu1 = cert.at("mu1").get<double>();
    b.cert.mu2 = cert.at("mu2").get<double>();
    b.cert.validate();
    check_dims(b.sys, b.fb);
    return b;
}

SystemBundle load_system_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open system file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system_json(ss.str());
}

std::string system_to_json(const SystemBundle& b) {
    json j;
    j["modes"] = json::array();
    for (int i = 0; i < b.sys.mode_count(); ++i) {
        json mode;
        mode["A"] = mat_to_json(b.sys.A[i]);
        mode["B"] = mat_to_json(b.sys.B[i]);
        mode["K"] = mat_to_json(b.fb.K[i]);
        j["modes"].push_back(std::move(mode));
    }
    j["certificate"] = {{"D", b.cert.D}, {"mu1", b.cert.mu1}, {"mu2", b.cert.mu2}};
    return j.dump(2);
}

} // namespace slsq
