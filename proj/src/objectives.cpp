#include "rsmax/objectives.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rsmax {

double cut_diversity(const SimilarityMatrix& sim, double lambda, const ItemSet& s) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("cut_diversity: lambda must be in (0,1]");
    const int n = sim.size();
    require_subset_of_ground(s, n, "cut_diversity");
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (Item x : s) in[x] = 1;
    double cross = 0.0, within = 0.0;
    for (int i = 0; i < n; ++i) {
        if (in[i]) {
            for (Item j : s) within += sim(i, j);
        } else {
            for (Item j : s) cross += sim(i, j);
        }
    }
    return cross - lambda * within;
}

double summarization_diversity(const SimilarityMatrix& sim, const ItemSet& s) {
    const int n = sim.size();
    require_subset_of_ground(s, n, "summarization_diversity");
    if (s.empty()) return 0.0;
    if (static_cast<int>(s.size()) == n)
        throw std::domain_error("summarization_diversity: S = Omega (empty complement)");
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (Item x : s) in[x] = 1;
    double cover = 0.0, within = 0.0;
    int comp = 0;
    for (int i = 0; i < n; ++i) {
        if (in[i]) {
            for (Item j : s) within += sim(i, j);
        } else {
            ++comp;
            double best = sim(i, s[0]);
            for (Item j : s) best = std::max(best, sim(i, j));
            cover += best;
        }
    }
    return cover - within / static_cast<double>(comp);
}

double gaussian_entropy(const CovarianceMatrix& cov, const ItemSet& s) {
    require_subset_of_ground(s, cov.size(), "gaussian_entropy");
    if (s.empty()) return 0.0;
    const double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
    const double logdet = cholesky_logdet(cov.entries, s);
    return 0.5 * (static_cast<double>(s.size()) * std::log(two_pi_e) + logdet);
}

double mutual_information(const CovarianceMatrix& cov, const ItemSet& s) {
    const int n = cov.size();
    require_subset_of_ground(s, n, "mutual_information");
    const ItemSet comp = set_complement(s, n);
    return gaussian_entropy(cov, s) + gaussian_entropy(cov, comp) -
           gaussian_entropy(cov, full_set(n));
}

ObjectiveOracle ObjectiveOracle::make_cut_diversity(SimilarityMatrix sim, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("ObjectiveOracle: lambda must be in (0,1]");
    ObjectiveOracle o(Kind::CutDiversity, sim.size());
    o.lambda_ = lambda;
    o.sim_ = std::make_shared<SimilarityMatrix>(std::move(sim));
    return o;
}

ObjectiveOracle ObjectiveOracle::make_summarization(SimilarityMatrix sim) {
    ObjectiveOracle o(Kind::SummarizationDiversity, sim.size());
    o.sim_ = std::make_shared<SimilarityMatrix>(std::move(sim));
    return o;
}

ObjectiveOracle ObjectiveOracle::make_mutual_information(CovarianceMatrix cov) {
    ObjectiveOracle o(Kind::MutualInformation, cov.size());
    o.cov_ = std::make_shared<CovarianceMatrix>(std::move(cov));
    return o;
}

ObjectiveOracle ObjectiveOracle::make_tabulated(int n, std::vector<double> values) {
    if (n < 1 || n > 20) throw std::invalid_argument("tabulated oracle: n must be in [1,20]");
    if (values.size() != (std::size_t{1} << n))
        throw std::invalid_argument("tabulated oracle: values.size() != 2^n");
    ObjectiveOracle o(Kind::Tabulated, n);
    o.table_ = std::make_shared<std::vector<double>>(std::move(values));
    return o;
}

const SimilarityMatrix& ObjectiveOracle::similarity() const {
    if (!sim_) throw std::logic_error("objective oracle has no similarity matrix");
    return *sim_;
}

const CovarianceMatrix& ObjectiveOracle::covariance() const {
    if (!cov_) throw std::logic_error("objective oracle has no covariance matrix");
    return *cov_;
}

double ObjectiveOracle::eval(const ItemSet& s) const {
    ++calls_;
    switch (kind_) {
        case Kind::CutDiversity:
            return cut_diversity(*sim_, lambda_, s);
        case Kind::SummarizationDiversity:
            return summarization_diversity(*sim_, s);
        case Kind::MutualInformation:
            return mutual_information(*cov_, s);
        case Kind::Tabulated:
            require_subset_of_ground(s, n_, "tabulated oracle");
            return (*table_)[mask_from_set(s)];
    }
    throw std::logic_error("ObjectiveOracle: bad kind");
}

double ObjectiveOracle::marginal_gain(const ItemSet& s, Item x) const {
    if (set_contains(s, x)) throw std::invalid_argument("marginal_gain: x already in S");
    return eval(set_insert(s, x)) - eval(s);
}

namespace {

constexpr double kTol = 1e-9;

// Checks one (A,B) pair; defined == false when either side is undefined
// (summarization at Omega), in which case the pair is skipped.
bool pair_holds(const ObjectiveOracle& o, const ItemSet& a, const ItemSet& b, double& lhs,
                double& rhs, bool& defined) {
    ItemSet u = a, v;
    for (Item x : b)
        if (!set_contains(a, x)) u = set_insert(u, x);
    for (Item x : a)
        if (set_contains(b, x)) v.push_back(x);
    defined = true;
    try {
        lhs = o.eval(u) + o.eval(v);
        rhs = o.eval(a) + o.eval(b);
    } catch (const std::domain_error&) {
        defined = false;
        return true;
    }
    return lhs <= rhs + kTol;
}

}  // namespace

VerificationReport check_submodularity(const ObjectiveOracle& oracle, long long trials,
                                       std::uint64_t seed) {
    VerificationReport report;
    report.property = "submodularity";
    const int n = oracle.n();
    if (trials == 0) {
        if (n > 20) throw std::invalid_argument("check_submodularity: exhaustive mode needs n <= 20");
        const std::uint32_t total = 1u << n;
        // Precompute one value per subset; undefined subsets marked NaN.
        std::vector<double> val(total);
        std::vector<char> ok(total, 1);
        for (std::uint32_t m = 0; m < total; ++m) {
            try {
                val[m] = oracle.eval(set_from_mask(m));
            } catch (const std::domain_error&) {
                ok[m] = 0;
            }
        }
        for (std::uint32_t a = 0; a < total; ++a) {
            for (std::uint32_t b = 0; b < total; ++b) {
                const std::uint32_t u = a | b, v = a & b;
                if (!(ok[a] && ok[b] && ok[u] && ok[v])) {
                    ++report.skipped;
                    continue;
                }
                ++report.instances_checked;
                const double lhs = val[u] + val[v];
                const double rhs = val[a] + val[b];
                if (lhs > rhs + kTol)
                    report.add_violation({seed, set_from_mask(a), set_from_mask(b), lhs, rhs,
                                          "f(AuB)+f(AnB) > f(A)+f(B)"});
            }
        }
        return report;
    }
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    for (long long t = 0; t < trials; ++t) {
        ItemSet a, b;
        for (int i = 0; i < n; ++i) {
            if (coin(rng)) a.push_back(i);
            if (coin(rng)) b.push_back(i);
        }
        double lhs = 0.0, rhs = 0.0;
        bool defined = true;
        if (!pair_holds(oracle, a, b, lhs, rhs, defined))
            report.add_violation({seed, a, b, lhs, rhs, "sampled pair"});
        if (defined)
            ++report.instances_checked;
        else
            ++report.skipped;
    }
    return report;
}

}  // namespace rsmax
