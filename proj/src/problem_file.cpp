#include "relpac/problem_file.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace relpac {

namespace {

double parse_number(const std::string& origin, int line, const std::string& key,
                    const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError(origin + ":" + std::to_string(line) + ": field '" + key +
                          "' is not a number: '" + text + "'");
    return v;
}

class Fields {
public:
    Fields(const std::string& origin, int line) : origin_(origin), line_(line) {}

    void insert(const std::string& token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError(where() + ": expected key=value, got '" + token + "'");
        kv_[token.substr(0, eq)] = token.substr(eq + 1);
    }

    double require(const std::string& key) {
        const auto it = kv_.find(key);
        if (it == kv_.end())
            throw ConfigError(where() + ": missing required field '" + key + "'");
        seen_.insert(*it);
        return parse_number(origin_, line_, key, it->second);
    }

    std::optional<double> optional(const std::string& key) {
        const auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        seen_.insert(*it);
        return parse_number(origin_, line_, key, it->second);
    }

    std::string require_text(const std::string& key) {
        const auto it = kv_.find(key);
        if (it == kv_.end())
            throw ConfigError(where() + ": missing required field '" + key + "'");
        seen_.insert(*it);
        return it->second;
    }

    void reject_unknown() const {
        for (const auto& [k, v] : kv_)
            if (!seen_.count(k))
                throw ConfigError(where() + ": unknown field '" + k + "'");
    }

    std::string where() const { return origin_ + ":" + std::to_string(line_); }

private:
    std::string origin_;
    int line_;
    std::map<std::string, std::string> kv_;
    std::map<std::string, std::string> seen_;
};

std::optional<Range> explicit_range(Fields& f) {
    const auto a = f.optional("a");
    const auto b = f.optional("b");
    if (a.has_value() != b.has_value())
        throw ConfigError(f.where() + ": fields 'a' and 'b' must be given together");
    if (!a) return std::nullopt;
    if (!(*a < *b)) throw ConfigError(f.where() + ": requires a < b");
    return Range(*a, *b);
}

} // namespace

Problem parse_problem_text(const std::string& text, const std::string& origin) {
    Problem problem;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool any_label = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream toks(line);
        std::string head;
        if (!(toks >> head)) continue;
        if (head != "arm")
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected line to start with 'arm', got '" + head + "'");
        Fields f(origin, lineno);
        std::string tok;
        while (toks >> tok) f.insert(tok);

        const std::string dist = f.require_text("dist");
        std::optional<double> mean_override = f.optional("mean");
        std::optional<double> label = f.optional("xi");

        ArmOracle arm = [&]() -> ArmOracle {
            try {
                if (dist == "uniform") {
                    const double center = f.require("center");
                    const double hw = f.require("half_width");
                    return ArmOracle::uniform_shifted(center, hw, explicit_range(f));
                }
                if (dist == "bernoulli") {
                    const double p = f.require("p");
                    const double lo = f.require("lo");
                    const double hi = f.require("hi");
                    return ArmOracle::bernoulli_affine(p, lo, hi, explicit_range(f));
                }
                if (dist == "degenerate") {
                    const double value = f.require("value");
                    const auto range = explicit_range(f);
                    if (!range)
                        throw ConfigError(f.where() + ": degenerate arms need explicit a and b");
                    return ArmOracle::degenerate(value, *range);
                }
                throw ConfigError(f.where() + ": unknown distribution tag '" + dist + "'");
            } catch (const std::invalid_argument& e) {
                throw ConfigError(f.where() + ": " + e.what());
            }
        }();
        f.reject_unknown();

        if (label) any_label = true;
        problem.arms.arms.push_back(arm);
        problem.arms.labels.push_back(label.value_or(static_cast<double>(problem.arms.labels.size())));
        problem.oracle_means.push_back(mean_override ? *mean_override : *arm.true_mean());
    }
    if (problem.arms.arms.empty())
        throw ConfigError(origin + ": no arms defined");
    if (!any_label) problem.arms.labels.clear();
    return problem;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str(), path);
}

} // namespace relpac
