#include "meander/increments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "meander/errors.hpp"
#include "meander/numeric.hpp"

namespace meander {

std::vector<std::pair<int, double>> IncrementLaw::atoms() const {
    std::vector<std::pair<int, double>> out;
    for (std::size_t i = 0; i < probs_.size(); ++i)
        if (probs_[i] > 0.0) out.emplace_back(offset_min_ + int(i), probs_[i]);
    return out;
}

bool IncrementLaw::symmetric(double tol) const {
    int lo = min_support(), hi = max_support();
    int m = std::max(-lo, hi);
    for (int x = 1; x <= m; ++x)
        if (std::abs(prob(x) - prob(-x)) > tol) return false;
    return true;
}

IncrementLaw IncrementLaw::reflected() const {
    std::vector<std::pair<int, double>> pts;
    for (auto [x, p] : atoms()) pts.emplace_back(-x, p);
    return make_law(pts, id_ + "-reflected");
}

IncrementLaw make_law(const std::vector<std::pair<int, double>>& support_points, std::string id) {
    if (support_points.size() < 2)
        throw std::invalid_argument("make_law: need at least two support points");
    std::map<int, double> pts;
    for (auto [x, w] : support_points) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw NotNormalizableError("make_law: weights must be positive and finite");
        if (!pts.emplace(x, w).second)
            throw std::invalid_argument("make_law: duplicate support point");
    }
    std::vector<double> ws;
    ws.reserve(pts.size());
    for (auto& [x, w] : pts) ws.push_back(w);
    double total = pairwise_sum(ws);
    if (!(total > 0.0) || !std::isfinite(total))
        throw NotNormalizableError("make_law: weights do not sum to a positive finite value");

    bool has_neg = false, has_pos = false;
    for (auto& [x, w] : pts) {
        if (x < 0) has_neg = true;
        if (x > 0) has_pos = true;
    }
    if (!has_neg || !has_pos)
        throw DegenerateSupportError("make_law: support must include negative and positive points");

    std::vector<double> mean_terms;
    for (auto& [x, w] : pts) mean_terms.push_back(double(x) * (w / total));
    double mean = pairwise_sum(mean_terms);
    if (std::abs(mean) > 1e-12)
        throw NonZeroMeanError("make_law: mean " + format_g17(mean) + " is not zero (laws are not re-centered)");

    IncrementLaw law;
    law.offset_min_ = pts.begin()->first;
    law.probs_.assign(std::size_t(pts.rbegin()->first - law.offset_min_ + 1), 0.0);
    for (auto& [x, w] : pts) law.probs_[std::size_t(x - law.offset_min_)] = w / total;
    law.id_ = std::move(id);

    // Lattice span: the walk reaches all of Z iff the support points generate
    // it. (The gcd of pairwise differences is 2 for the +-1 walk, whose S_n
    // carries the parity of n; that periodicity is handled by the engine, so
    // it must not be rejected here.)
    int g = 0;
    for (auto& [x, w] : pts) g = std::gcd(g, std::abs(x));
    law.span_checked_ = (g == 1);
    return law;
}

IncrementLaw builtin_law(const std::string& name) {
    std::string n = name;
    if (n.rfind("builtin:", 0) == 0) n = n.substr(8);
    if (n == "simple") return make_law({{-1, 0.5}, {1, 0.5}}, "simple");
    if (n == "lazy") return make_law({{-1, 0.25}, {0, 0.5}, {1, 0.25}}, "lazy");
    if (n == "skew3") return make_law({{-1, 0.6}, {0, 0.1}, {2, 0.3}}, "skew3");
    if (n == "sym5")
        return make_law({{-2, 0.125}, {-1, 0.25}, {0, 0.25}, {1, 0.25}, {2, 0.125}}, "sym5");
    throw ConfigError("unknown builtin law: " + name);
}

std::vector<std::string> builtin_law_names() { return {"simple", "lazy", "skew3", "sym5"}; }

IncrementLaw parse_law_text(const std::string& text, std::string id) {
    std::vector<std::pair<int, double>> pts;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long x;
        double w;
        if (ls >> x >> w) pts.emplace_back(int(x), w);
        else {
            std::string rest;
            ls.clear();
            if (ls >> rest) throw ConfigError("law file: cannot parse line '" + line + "'");
        }
    }
    if (pts.empty()) throw ConfigError("law file: no support points found");
    return make_law(pts, std::move(id));
}

IncrementLaw load_law(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) return builtin_law(spec);
    std::ifstream f(spec);
    if (!f) throw ConfigError("cannot open law file: " + spec);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_law_text(ss.str(), spec);
}

double MomentSummary::sigma() const { return std::sqrt(sigma2); }

MomentSummary moments(const IncrementLaw& law) {
    std::vector<double> t2, t3;
    for (auto [x, p] : law.atoms()) {
        double a = std::abs(double(x));
        t2.push_back(a * a * p);
        t3.push_back(a * a * a * p);
    }
    MomentSummary s;
    s.sigma2 = pairwise_sum(t2);
    s.abs3 = pairwise_sum(t3);
    double sigma3 = std::pow(s.sigma2, 1.5);
    s.lyapunov = s.abs3 / sigma3;
    s.smoothing_A = sigma3 / (8.0 * s.abs3);
    s.eu_abs = (48.0 * std::numbers::ln2 / std::numbers::pi) * s.lyapunov;
    return s;
}

double gamma1(double y, const MomentSummary& summary) {
    if (y < 0.0) throw std::invalid_argument("gamma1: y must be non-negative");
    return std::numbers::sqrt2 * summary.lyapunov + y / std::sqrt(std::numbers::pi);
}

} // namespace meander
