#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsmax {

// Dense square matrix of doubles, row-major.
class SquareMatrix {
public:
    SquareMatrix() = default;
    SquareMatrix(int n, double fill = 0.0);

    int size() const { return n_; }
    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

    bool is_symmetric(double tol = 0.0) const;
    void require_finite(const char* who) const;

private:
    int n_ = 0;
    std::vector<double> data_;
};

// Plain-text format: first line n, then n rows of n whitespace-separated
// decimals. Shared by similarity and covariance files.
SquareMatrix read_square_matrix(std::istream& in);
SquareMatrix read_square_matrix_file(const std::string& path);
void write_square_matrix(std::ostream& out, const SquareMatrix& m);

struct SimilarityMatrix {
    SquareMatrix entries;
    bool symmetric = false;

    explicit SimilarityMatrix(SquareMatrix m);
    int size() const { return entries.size(); }
    double operator()(int i, int j) const { return entries(i, j); }
};

struct CovarianceMatrix {
    SquareMatrix entries;

    explicit CovarianceMatrix(SquareMatrix m);
    int size() const { return entries.size(); }
    double operator()(int i, int j) const { return entries(i, j); }
};

// Log-determinant of the principal submatrix indexed by `idx`, via Cholesky.
// When a pivot falls below 1e-12, retries once with jitter eps*I where
// eps = 1e-8 * mean(diag). Throws std::domain_error naming the submatrix if
// the jittered factorization still fails.
double cholesky_logdet(const SquareMatrix& m, const std::vector<int>& idx);

}  // namespace rsmax
