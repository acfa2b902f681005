#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rsmax/core.hpp"
#include "rsmax/matrix.hpp"
#include "rsmax/report.hpp"

namespace rsmax {

// f(S) = sum_{i in Omega\S} sum_{j in S} s_{i,j} - lambda * sum_{i,j in S} s_{i,j},
// with 0 < lambda <= 1. Nonnegative nonmonotone submodular; the cut function
// when lambda = 1.
double cut_diversity(const SimilarityMatrix& sim, double lambda, const ItemSet& s);

// f(S) = sum_{i in Omega\S} max_{j in S} d_{i,j}
//        - (1/|Omega\S|) * sum_{i,j in S} d_{i,j}.
// f(empty) = 0 by convention (max over the empty set taken as 0);
// S = Omega is a domain error (the denominator vanishes).
double summarization_diversity(const SimilarityMatrix& sim, const ItemSet& s);

// Joint differential entropy of the Gaussian marginal on S:
// h(S) = 0.5 * (|S| * log(2*pi*e) + logdet(B_S)), h(empty) = 0.
double gaussian_entropy(const CovarianceMatrix& cov, const ItemSet& s);

// I(S; Omega\S) = h(S) + h(Omega\S) - h(Omega). Symmetric in S vs complement.
double mutual_information(const CovarianceMatrix& cov, const ItemSet& s);

// Nonnegative set function with an evaluation counter. Value semantics: a
// copy gets an independent counter, so parallel runs can merge counts later.
class ObjectiveOracle {
public:
    enum class Kind { CutDiversity, SummarizationDiversity, MutualInformation, Tabulated };

    static ObjectiveOracle make_cut_diversity(SimilarityMatrix sim, double lambda);
    static ObjectiveOracle make_summarization(SimilarityMatrix sim);
    static ObjectiveOracle make_mutual_information(CovarianceMatrix cov);
    // Explicit value per subset mask; values.size() must be 2^n, n <= 20.
    static ObjectiveOracle make_tabulated(int n, std::vector<double> values);

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    double lambda() const { return lambda_; }

    // Backing matrices; throw std::logic_error when the kind has none.
    const SimilarityMatrix& similarity() const;
    const CovarianceMatrix& covariance() const;

    // f(S). Increments the call counter. Throws std::domain_error for items
    // outside the ground set (and for summarization at S = Omega).
    double eval(const ItemSet& s) const;

    // f(S + x) - f(S), computed as exactly that difference (two eval calls).
    // Throws std::invalid_argument when x is already in S.
    double marginal_gain(const ItemSet& s, Item x) const;

    std::int64_t calls() const { return calls_; }
    void reset_calls() { calls_ = 0; }

private:
    ObjectiveOracle(Kind kind, int n) : kind_(kind), n_(n) {}

    Kind kind_;
    int n_;
    double lambda_ = 1.0;
    std::shared_ptr<const SimilarityMatrix> sim_;
    std::shared_ptr<const CovarianceMatrix> cov_;
    std::shared_ptr<const std::vector<double>> table_;
    mutable std::int64_t calls_ = 0;
};

// Checks f(A u B) + f(A n B) <= f(A) + f(B) + 1e-9 over subset pairs.
// Exhaustive over all 4^n pairs when trials == 0 (requires n <= 20);
// otherwise samples `trials` random pairs. Pairs where f is undefined
// (summarization at Omega) are skipped and counted in the report.
VerificationReport check_submodularity(const ObjectiveOracle& oracle, long long trials,
                                       std::uint64_t seed);

}  // namespace rsmax
