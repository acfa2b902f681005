#include "rsmax/matrix.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rsmax {

SquareMatrix::SquareMatrix(int n, double fill)
    : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {
    if (n < 0) throw std::invalid_argument("SquareMatrix: negative size");
}

bool SquareMatrix::is_symmetric(double tol) const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

void SquareMatrix::require_finite(const char* who) const {
    for (double v : data_)
        if (!std::isfinite(v)) throw std::domain_error(std::string(who) + ": non-finite entry");
}

SquareMatrix read_square_matrix(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n <= 0) throw std::runtime_error("matrix file: bad or missing size line");
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(in >> m(i, j)))
                throw std::runtime_error("matrix file: not square (ran out of entries at row " +
                                         std::to_string(i) + ")");
    double extra;
    if (in >> extra) throw std::runtime_error("matrix file: trailing entries, input not square");
    m.require_finite("matrix file");
    return m;
}

SquareMatrix read_square_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    return read_square_matrix(in);
}

void write_square_matrix(std::ostream& out, const SquareMatrix& m) {
    out << m.size() << "\n";
    out.precision(17);
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) out << (j ? " " : "") << m(i, j);
        out << "\n";
    }
}

SimilarityMatrix::SimilarityMatrix(SquareMatrix m) : entries(std::move(m)) {
    entries.require_finite("SimilarityMatrix");
    symmetric = entries.is_symmetric(0.0);
}

CovarianceMatrix::CovarianceMatrix(SquareMatrix m) : entries(std::move(m)) {
    entries.require_finite("CovarianceMatrix");
    if (!entries.is_symmetric(1e-12)) throw std::domain_error("CovarianceMatrix: not symmetric");
}

namespace {

// One Cholesky attempt; returns false on a pivot at or below `floor`.
bool try_cholesky_logdet(const SquareMatrix& m, const std::vector<int>& idx, double jitter,
                         double floor, double& logdet) {
    const int k = static_cast<int>(idx.size());
    std::vector<double> L(static_cast<std::size_t>(k) * k, 0.0);
    logdet = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = m(idx[i], idx[j]) + (i == j ? jitter : 0.0);
            for (int p = 0; p < j; ++p) sum -= L[i * k + p] * L[j * k + p];
            if (i == j) {
                if (sum <= floor) return false;
                L[i * k + j] = std::sqrt(sum);
                logdet += std::log(sum);
            } else {
                L[i * k + j] = sum / L[j * k + j];
            }
        }
    }
    return true;
}

std::string index_list(const std::vector<int>& idx) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
    os << "}";
    return os.str();
}

}  // namespace

double cholesky_logdet(const SquareMatrix& m, const std::vector<int>& idx) {
    if (idx.empty()) return 0.0;
    constexpr double kPivotFloor = 1e-12;
    double logdet = 0.0;
    if (try_cholesky_logdet(m, idx, 0.0, kPivotFloor, logdet)) return logdet;
    double diag_mean = 0.0;
    for (int i : idx) diag_mean += m(i, i);
    diag_mean /= static_cast<double>(idx.size());
    const double eps = 1e-8 * diag_mean;
    if (eps > 0.0 && try_cholesky_logdet(m, idx, eps, kPivotFloor, logdet)) return logdet;
    throw std::domain_error("ill-conditioned covariance submatrix " + index_list(idx));
}

}  // namespace rsmax
