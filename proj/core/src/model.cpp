#include "capcall/model.hpp"

#include "capcall/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace capcall {

namespace {

constexpr std::array<std::string_view, 9> kKeys = {
    "r", "delta1", "delta2", "lambda1", "lambda2", "sigma1", "sigma2", "K", "L"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool known_key(std::string_view key) {
    for (auto k : kKeys)
        if (k == key) return true;
    return false;
}

double require(const ParameterMap& raw, std::string_view key) {
    auto it = raw.find(key);
    if (it == raw.end()) throw DomainError(std::string(key), "missing");
    if (!std::isfinite(it->second)) throw DomainError(std::string(key), "must be finite");
    return it->second;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Regime regime_from_number(int n) {
    if (n == 1) return Regime::one;
    if (n == 2) return Regime::two;
    throw DomainError("regime", "must be 1 or 2");
}

ModelParams ModelParams::swapped() const {
    ModelParams p = *this;
    std::swap(p.delta[0], p.delta[1]);
    std::swap(p.sigma[0], p.sigma[1]);
    std::swap(p.lambda[0], p.lambda[1]);
    return p;
}

double CappedCallPayoff::operator()(double x) const noexcept {
    return std::max(std::min(x, L) - K, 0.0);
}

CappedCallPayoff payoff_of(const ModelParams& params) noexcept {
    return {params.K, params.L};
}

ModelParams validate(const ParameterMap& raw) {
    for (const auto& [key, value] : raw)
        if (!known_key(key)) throw DomainError(key, "unknown parameter");

    ModelParams p;
    p.r = require(raw, "r");
    p.delta = {require(raw, "delta1"), require(raw, "delta2")};
    p.lambda = {require(raw, "lambda1"), require(raw, "lambda2")};
    p.sigma = {require(raw, "sigma1"), require(raw, "sigma2")};
    p.K = require(raw, "K");
    p.L = require(raw, "L");

    if (!(p.r > 0)) throw DomainError("r", "must be positive");
    for (std::size_t i = 0; i < 2; ++i) {
        if (!(p.delta[i] > 0)) throw DomainError("delta", "must be positive");
        if (!(p.sigma[i] > 0)) throw DomainError("sigma", "must be positive");
        if (!(p.lambda[i] > 0)) throw DomainError("lambda", "must be positive");
        if (!(p.r - p.delta[i] > 0)) throw DomainError("delta", "require r-delta_i>0");
    }
    if (!(p.K >= 0)) throw DomainError("K", "must be nonnegative");
    if (!(p.L > p.K)) throw DomainError("L", "L must exceed K");
    return p;
}

double payoff(const ModelParams& params, double x) {
    if (!(x > 0)) throw DomainError("x", "price must be positive");
    return payoff_of(params)(x);
}

ParameterMap parse_config(std::string_view text) {
    ParameterMap out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const auto line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto where = "line " + std::to_string(line_no) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected key=value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!known_key(key)) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
        if (out.contains(key)) throw ConfigError(where + "duplicate key '" + std::string(key) + "'");

        double parsed = 0.0;
        const auto* end = value.data() + value.size();
        auto [ptr, ec] = std::from_chars(value.data(), end, parsed);
        if (value.empty() || ec != std::errc{} || ptr != end || !std::isfinite(parsed))
            throw ConfigError(where + "value of '" + std::string(key) + "' is not a decimal number");
        out.emplace(std::string(key), parsed);
    }
    for (auto k : kKeys)
        if (!out.contains(k)) throw ConfigError("missing key '" + std::string(k) + "'");
    return out;
}

ParameterMap read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

ParameterMap to_map(const ModelParams& p) {
    return {{"r", p.r},           {"delta1", p.delta[0]},  {"delta2", p.delta[1]},
            {"lambda1", p.lambda[0]}, {"lambda2", p.lambda[1]}, {"sigma1", p.sigma[0]},
            {"sigma2", p.sigma[1]}, {"K", p.K},              {"L", p.L}};
}

std::string serialize(const ModelParams& params) {
    const auto map = to_map(params);
    std::string out;
    for (auto key : kKeys) {
        out += key;
        out += '=';
        out += format_g17(map.find(key)->second);
        out += '\n';
    }
    return out;
}

}  // namespace capcall
