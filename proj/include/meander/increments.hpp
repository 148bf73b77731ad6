#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace meander {

// Integer-lattice increment distribution with zero mean. Immutable after
// construction, safe to share across threads.
class IncrementLaw {
public:
    // probs[i] is the weight of support point offset_min + i.
    int offset_min() const { return offset_min_; }
    const std::vector<double>& probs() const { return probs_; }
    bool span_checked() const { return span_checked_; }

    int min_support() const { return offset_min_; }
    int max_support() const { return offset_min_ + int(probs_.size()) - 1; }
    double prob(int x) const {
        int i = x - offset_min_;
        return (i >= 0 && i < int(probs_.size())) ? probs_[std::size_t(i)] : 0.0;
    }
    // Support points with strictly positive mass, ascending.
    std::vector<std::pair<int, double>> atoms() const;
    bool symmetric(double tol = 1e-14) const;
    IncrementLaw reflected() const; // x -> -x

    std::string id() const { return id_; }

private:
    friend IncrementLaw make_law(const std::vector<std::pair<int, double>>&, std::string);
    int offset_min_ = 0;
    std::vector<double> probs_;
    bool span_checked_ = false;
    std::string id_;
};

// Validates and normalizes the weights. The mean must already be zero within
// 1e-12: laws are rejected rather than re-centered, so user-declared moments
// stay meaningful.
IncrementLaw make_law(const std::vector<std::pair<int, double>>& support_points,
                      std::string id = "custom");

// builtin:simple, builtin:lazy, builtin:skew3, builtin:sym5 (the "builtin:"
// prefix is optional here).
IncrementLaw builtin_law(const std::string& name);
std::vector<std::string> builtin_law_names();

// "offset weight" per line, '#' starts a comment.
IncrementLaw parse_law_text(const std::string& text, std::string id = "file");
IncrementLaw load_law(const std::string& spec); // builtin:NAME or a file path

struct MomentSummary {
    double sigma2 = 0.0;      // E X^2
    double abs3 = 0.0;        // E |X|^3
    double lyapunov = 0.0;    // E|X|^3 / sigma^3
    double smoothing_A = 0.0; // sigma^3 / (8 E|X|^3), i.e. 1/(8 E|X|^3) for the sigma-normalized law
    double eu_abs = 0.0;      // E|U| = (48 ln 2 / pi) E|X|^3 in sigma-normalized units
    double sigma() const;
};

MomentSummary moments(const IncrementLaw& law);

// gamma1(y) = sqrt(2) E|X|^3 + y / sqrt(pi), evaluated on the sigma-normalized law.
double gamma1(double y, const MomentSummary& summary);

} // namespace meander
