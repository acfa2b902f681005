#include "rsmax/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rsmax/baselines.hpp"
#include "rsmax/parallel.hpp"

namespace rsmax {

void ScenarioConfig::validate() const {
    if (scenario == Scenario::Multicast && n < 2)
        throw std::invalid_argument("config: multicast needs n >= 2");
    if (budgets.empty()) throw std::invalid_argument("config: no budgets");
    for (double b : budgets)
        if (!(b > 0.0)) throw std::invalid_argument("config: budgets must be positive");
    if (seeds.empty()) throw std::invalid_argument("config: no seeds");
    if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("config: lambda in (0,1]");
    if (theta < 0.0) throw std::invalid_argument("config: theta must be nonnegative");
    if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    for (const auto& a : algos)
        if (a != "ours" && a != "rand" && a != "rmax")
            throw std::invalid_argument("config: unknown algorithm " + a);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(trim(part));
    return out;
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig cfg;
    bool have_algos = false;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("config: expected key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "scenario") {
            if (value == "poi")
                cfg.scenario = ScenarioConfig::Scenario::Poi;
            else if (value == "multicast")
                cfg.scenario = ScenarioConfig::Scenario::Multicast;
            else
                throw std::runtime_error("config: unknown scenario " + value);
        } else if (key == "n") {
            cfg.n = std::stoi(value);
        } else if (key == "budgets" || key == "budget") {
            cfg.budgets.clear();
            for (const auto& b : split_commas(value)) cfg.budgets.push_back(std::stod(b));
        } else if (key == "theta") {
            cfg.theta = std::stod(value);
        } else if (key == "k") {
            cfg.k = (value == "auto") ? 0 : std::stoi(value);
        } else if (key == "seeds" || key == "seed") {
            cfg.seeds.clear();
            const auto range = value.find("..");
            if (range != std::string::npos) {
                const auto lo = std::stoull(value.substr(0, range));
                const auto hi = std::stoull(value.substr(range + 2));
                if (hi < lo) throw std::runtime_error("config: bad seed range " + value);
                for (auto s = lo; s <= hi; ++s) cfg.seeds.push_back(s);
            } else {
                for (const auto& s : split_commas(value)) cfg.seeds.push_back(std::stoull(s));
            }
        } else if (key == "lambda") {
            cfg.lambda = std::stod(value);
        } else if (key == "algos") {
            cfg.algos = split_commas(value);
            have_algos = true;
        } else if (key == "jobs") {
            cfg.jobs = std::stoi(value);
        } else {
            throw std::runtime_error("config: unknown key " + key);
        }
    }
    (void)have_algos;
    cfg.validate();
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in);
}

Instance gen_multicast_instance(int n, std::uint64_t seed, double budget, double lambda, int k) {
    if (n < 2) throw std::invalid_argument("gen_multicast_instance: n >= 2 required");
    std::mt19937_64 rng(seed);
    // Complete graph over root + processors, integer delays in [1, 200].
    WeightedGraph g(n);
    std::uniform_int_distribution<int> delay(1, 200);
    for (int u = 0; u < g.vertices(); ++u)
        for (int v = u + 1; v < g.vertices(); ++v)
            g.add_edge(u, v, static_cast<double>(delay(rng)));
    // Synthetic low-rank rating factors; similarity is the inner product of
    // the non-normalized feature vectors.
    constexpr int kRank = 5;
    std::uniform_real_distribution<double> fd(0.0, 1.0);
    std::vector<double> factors(static_cast<std::size_t>(n) * kRank);
    for (auto& f : factors) f = fd(rng);
    SquareMatrix sim(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double dot = 0.0;
            for (int r = 0; r < kRank; ++r)
                dot += factors[static_cast<std::size_t>(i) * kRank + r] *
                       factors[static_cast<std::size_t>(j) * kRank + r];
            sim(i, j) = 10.0 * dot;
            sim(j, i) = sim(i, j);
        }
    ObjectiveOracle objective =
        ObjectiveOracle::make_cut_diversity(SimilarityMatrix(std::move(sim)), lambda);
    CostOracle cost = CostOracle::make_steiner(CostOracle::Kind::SteinerKmb, std::move(g));
    return Instance{n, std::move(objective), std::move(cost), budget, 1.0,
                    k > 0 ? k : default_k(n)};
}

Instance gen_poi_instance(std::uint64_t seed, double budget, int k) {
    constexpr int kPois = 45;
    constexpr double kWidth = 35.0, kHeight = 40.0;
    constexpr double kRate = 0.6;
    constexpr double kLengthScale = 8.0;
    std::mt19937_64 rng(seed);
    PointSet pts;
    pts.depot = {0.0, 0.0};
    pts.travel_rate = kRate;
    std::uniform_real_distribution<double> xd(0.0, kWidth), yd(0.0, kHeight);
    std::uniform_real_distribution<double> cd(0.0, 2.0);
    std::vector<double> collect;
    for (int i = 0; i < kPois; ++i) {
        pts.coords.push_back({xd(rng), yd(rng)});
        double c = cd(rng);
        while (!(c > 0.0 && c < 2.0)) c = cd(rng);  // open interval
        collect.push_back(c);
    }
    SquareMatrix cov(kPois);
    for (int i = 0; i < kPois; ++i)
        for (int j = i; j < kPois; ++j) {
            const double d = euclid(pts.coords[i], pts.coords[j]);
            cov(i, j) = std::exp(-d * d / (2.0 * kLengthScale * kLengthScale));
            cov(j, i) = cov(i, j);
        }
    ObjectiveOracle objective = ObjectiveOracle::make_mutual_information(CovarianceMatrix(std::move(cov)));
    CostOracle cost = CostOracle::make_tsp(CostOracle::Kind::TspTwoOpt, std::move(pts),
                                           std::move(collect), /*exact_fallback_limit=*/15);
    return Instance{kPois, std::move(objective), std::move(cost), budget, 1.0,
                    k > 0 ? k : default_k(kPois)};
}

Instance make_instance(const ScenarioConfig& config, std::uint64_t seed, double budget) {
    if (config.scenario == ScenarioConfig::Scenario::Multicast)
        return gen_multicast_instance(config.n, seed, budget, config.lambda, config.k);
    Instance inst = gen_poi_instance(seed, budget, config.k);
    inst.theta = config.theta >= inst.cost.theta() ? config.theta : inst.cost.theta();
    return inst;
}

std::vector<RunRecord> run_experiment(const ScenarioConfig& config) {
    config.validate();
    struct Job {
        std::string algo;
        std::uint64_t seed;
        double budget;
    };
    std::vector<Job> jobs;
    for (const auto& algo : config.algos)
        for (const auto seed : config.seeds)
            for (const double budget : config.budgets) jobs.push_back({algo, seed, budget});
    std::vector<RunRecord> records(jobs.size());

    parallel_for(static_cast<int>(jobs.size()), config.jobs, [&](int idx) {
        const Job& job = jobs[static_cast<std::size_t>(idx)];
        RunRecord rec;
        rec.algo = job.algo;
        rec.seed = job.seed;
        rec.budget = job.budget;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Instance inst = make_instance(config, job.seed, job.budget);
            Solution sol;
            if (job.algo == "ours")
                sol = solve(inst);
            else if (job.algo == "rand")
                sol = rand_baseline(inst, job.seed);
            else
                sol = rmax_baseline(inst);
            rec.value = sol.value;
            rec.cost = sol.cost;
            rec.over_budget = sol.over_budget_ratio;
            rec.selected = sol.selected;
            rec.collect_energy = inst.cost.visiting_sum(sol.selected);
            rec.travel_energy = sol.cost - rec.collect_energy;
            rec.f_calls = sol.f_calls;
            rec.rho_calls = sol.rho_calls;
            const double theta = inst.theta;
            if (job.algo == "ours" ? rec.over_budget > theta + 1e-9 : rec.over_budget != 0.0)
                throw std::logic_error("budget-safety invariant violated by " + job.algo);
        } catch (const std::logic_error&) {
            throw;
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
        records[static_cast<std::size_t>(idx)] = std::move(rec);
    });

    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.algo, a.seed, a.budget) < std::tie(b.algo, b.seed, b.budget);
    });
    return records;
}

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << "algo,seed,budget,value,cost,over_budget,items,travel_energy,collect_energy,"
           "f_calls,rho_calls,ms\n";
    out.precision(12);
    for (const auto& r : records) {
        out << r.algo << "," << r.seed << "," << r.budget << "," << r.value << "," << r.cost << ","
            << r.over_budget << "," << r.selected.size() << "," << r.travel_energy << ","
            << r.collect_energy << "," << r.f_calls << "," << r.rho_calls << "," << r.ms << "\n";
    }
}

namespace {

// Minimal SVG plotting; enough for the report figures.
class SvgCanvas {
public:
    SvgCanvas(double width, double height) : w_(width), h_(height) {
        body_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
              << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
              << "\" viewBox=\"0 0 " << w_ << " " << h_ << "\">\n"
              << "<rect width=\"" << w_ << "\" height=\"" << h_ << "\" fill=\"white\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double width = 1.0) {
        body_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
              << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
        body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (auto [x, y] : pts) body_ << x << "," << y << " ";
        body_ << "\"/>\n";
    }

    void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
                 double opacity) {
        body_ << "<polygon fill=\"" << fill << "\" fill-opacity=\"" << opacity
              << "\" stroke=\"none\" points=\"";
        for (auto [x, y] : pts) body_ << x << "," << y << " ";
        body_ << "\"/>\n";
    }

    void circle(double x, double y, double r, const std::string& fill,
                const std::string& stroke = "none") {
        body_ << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << r << "\" fill=\"" << fill
              << "\" stroke=\"" << stroke << "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill) {
        body_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
              << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, int size = 11,
              const std::string& anchor = "start") {
        body_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
              << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s
              << "</text>\n";
    }

    void save(const std::string& path) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << body_.str() << "</svg>\n";
    }

private:
    double w_, h_;
    std::ostringstream body_;
};

std::string color_for(const std::string& algo) {
    if (algo == "ours") return "#d62728";
    if (algo == "rmax") return "#1f77b4";
    return "#7f7f7f";
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

void plot_value_vs_budget(const std::vector<RunRecord>& records, const std::string& path) {
    // Per (algo, budget): mean value; for rand also min and max for the band.
    std::map<std::string, std::map<double, std::vector<double>>> by_algo;
    for (const auto& r : records)
        if (r.error.empty()) by_algo[r.algo][r.budget].push_back(r.value);
    if (by_algo.empty()) return;
    double bmin = 1e300, bmax = -1e300, vmin = 0.0, vmax = -1e300;
    for (const auto& [algo, per_budget] : by_algo)
        for (const auto& [b, vals] : per_budget) {
            bmin = std::min(bmin, b);
            bmax = std::max(bmax, b);
            for (double v : vals) {
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
        }
    if (bmax <= bmin) bmax = bmin + 1.0;
    if (vmax <= vmin) vmax = vmin + 1.0;
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    auto X = [&](double b) { return ml + (b - bmin) / (bmax - bmin) * (W - ml - mr); };
    auto Y = [&](double v) { return H - mb - (v - vmin) / (vmax - vmin) * (H - mt - mb); };
    SvgCanvas svg(W, H);
    svg.line(ml, H - mb, W - mr, H - mb, "black");
    svg.line(ml, mt, ml, H - mb, "black");
    svg.text(W / 2, H - 12, "budget", 12, "middle");
    svg.text(14, mt - 4, "value");
    // Rand error band first so the lines draw on top.
    if (by_algo.count("rand")) {
        std::vector<std::pair<double, double>> upper, lower;
        for (const auto& [b, vals] : by_algo["rand"]) {
            upper.emplace_back(X(b), Y(*std::max_element(vals.begin(), vals.end())));
            lower.emplace_back(X(b), Y(*std::min_element(vals.begin(), vals.end())));
        }
        std::reverse(lower.begin(), lower.end());
        upper.insert(upper.end(), lower.begin(), lower.end());
        if (upper.size() >= 3) svg.polygon(upper, "#999999", 0.35);
    }
    int li = 0;
    for (const auto& [algo, per_budget] : by_algo) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& [b, vals] : per_budget) {
            double mean = 0.0;
            for (double v : vals) mean += v;
            mean /= static_cast<double>(vals.size());
            pts.emplace_back(X(b), Y(mean));
        }
        svg.polyline(pts, color_for(algo));
        svg.text(ml + 8, mt + 14 + 16 * li, algo, 12);
        svg.rect(ml - 6, mt + 6 + 16 * li, 8, 8, color_for(algo));
        ++li;
    }
    for (const auto& [b, vals] : by_algo.begin()->second) {
        (void)vals;
        svg.text(X(b), H - mb + 16, fmt(b), 10, "middle");
    }
    svg.text(ml - 8, Y(vmin) + 4, fmt(vmin), 10, "end");
    svg.text(ml - 8, Y(vmax) + 4, fmt(vmax), 10, "end");
    svg.save(path);
}

void plot_energy_split(const std::vector<RunRecord>& records, const std::string& path) {
    // Mean travel/collect per (algo, budget), stacked bars grouped by budget.
    std::map<std::pair<double, std::string>, std::pair<double, double>> sums;
    std::map<std::pair<double, std::string>, int> counts;
    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        const auto key = std::make_pair(r.budget, r.algo);
        sums[key].first += r.travel_energy;
        sums[key].second += r.collect_energy;
        ++counts[key];
    }
    if (sums.empty()) return;
    double emax = 0.0;
    for (auto& [key, s] : sums) {
        s.first /= counts[key];
        s.second /= counts[key];
        emax = std::max(emax, s.first + s.second);
    }
    if (emax <= 0.0) emax = 1.0;
    const double W = 640, H = 420, ml = 70, mr = 20, mt = 20, mb = 60;
    const int bars = static_cast<int>(sums.size());
    const double bw = (W - ml - mr) / (bars * 1.5 + 0.5);
    SvgCanvas svg(W, H);
    svg.line(ml, H - mb, W - mr, H - mb, "black");
    svg.line(ml, mt, ml, H - mb, "black");
    svg.text(14, mt - 4, "energy");
    int i = 0;
    for (const auto& [key, s] : sums) {
        const double x = ml + bw * (0.5 + 1.5 * i);
        const double th = s.first / emax * (H - mt - mb);
        const double ch = s.second / emax * (H - mt - mb);
        svg.rect(x, H - mb - th, bw, th, color_for(key.second));
        svg.rect(x, H - mb - th - ch, bw, ch, "#2ca02c");
        svg.text(x + bw / 2, H - mb + 14, key.second, 10, "middle");
        svg.text(x + bw / 2, H - mb + 28, fmt(key.first), 10, "middle");
        ++i;
    }
    svg.text(ml - 8, H - mb + 4, "0", 10, "end");
    svg.text(ml - 8, mt + 8, fmt(emax), 10, "end");
    svg.text(W - mr - 4, mt + 12, "green = collection, colored = travel", 10, "end");
    svg.save(path);
}

void plot_selection_overlay(const std::vector<RunRecord>& records, const ScenarioConfig& config,
                            const std::string& path) {
    if (config.scenario != ScenarioConfig::Scenario::Poi) return;
    const std::uint64_t seed = config.seeds.front();
    const double budget = config.budgets.front();
    const Instance inst = gen_poi_instance(seed, budget, config.k);
    const PointSet& pts = *inst.cost.points();
    const double scale = 12.0, margin = 30.0;
    const double W = 35.0 * scale + 2 * margin, H = 40.0 * scale + 2 * margin;
    auto X = [&](double x) { return margin + x * scale; };
    auto Y = [&](double y) { return H - margin - y * scale; };
    SvgCanvas svg(W, H);
    svg.rect(X(0), Y(40), 35 * scale, 40 * scale, "#f4f4f4");
    for (const auto& p : pts.coords) svg.circle(X(p.x), Y(p.y), 3.0, "#cccccc");
    svg.rect(X(pts.depot.x) - 5, Y(pts.depot.y) - 5, 10, 10, "black");
    double r = 9.0;
    for (const auto& rec : records) {
        if (rec.seed != seed || rec.budget != budget || !rec.error.empty()) continue;
        for (Item it : rec.selected) {
            const auto& p = pts.coords[it];
            svg.circle(X(p.x), Y(p.y), r, "none", color_for(rec.algo));
        }
        r -= 2.5;
    }
    svg.text(margin, 16, "selected PoIs (ring color per algorithm), seed " + std::to_string(seed));
    svg.save(path);
}

}  // namespace

void emit_report(const std::vector<RunRecord>& records, const ScenarioConfig& config,
                 const std::string& out_dir) {
    if (records.empty()) throw std::invalid_argument("emit_report: no records");
    std::filesystem::create_directories(out_dir);
    const auto dir = std::filesystem::path(out_dir);
    {
        std::ofstream csv(dir / "runs.csv");
        if (!csv) throw std::runtime_error("cannot write runs.csv under " + out_dir);
        write_records_csv(csv, records);
    }
    plot_value_vs_budget(records, (dir / "value_vs_budget.svg").string());
    plot_energy_split(records, (dir / "energy_split.svg").string());
    plot_selection_overlay(records, config, (dir / "selection_overlay.svg").string());
}

}  // namespace rsmax
