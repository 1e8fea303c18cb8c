#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "params.hpp"

namespace openxxz {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// complex literals in configs: "1.5", "-0.3", "0.854i", "0.3+0.1i", "1-2i", "i"
inline Complex parse_complex(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ConfigError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') {
        std::size_t pos = 0;
        double re = 0.0;
        try {
            re = std::stod(s, &pos);
        } catch (...) {
            throw ConfigError("bad complex literal: " + text);
        }
        if (pos != s.size()) throw ConfigError("bad complex literal: " + text);
        return Complex(re, 0.0);
    }
    s.pop_back();  // strip the i
    // split at the last +/- that is not a leading sign or exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    auto num = [&](const std::string& part, double empty_value) {
        if (part.empty() || part == "+") return empty_value;
        if (part == "-") return -empty_value;
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &pos);
        } catch (...) {
            throw ConfigError("bad complex literal: " + text);
        }
        if (pos != part.size()) throw ConfigError("bad complex literal: " + text);
        return v;
    };
    if (split == std::string::npos) return Complex(0.0, num(s, 1.0));
    return Complex(num(s.substr(0, split), 0.0), num(s.substr(split), 1.0));
}

inline std::string format_complex(Complex z) {
    std::ostringstream os;
    os.precision(17);
    if (z.imag() == 0.0) {
        os << z.real();
        return os.str();
    }
    if (z.real() == 0.0) {
        os << z.imag() << "i";
        return os.str();
    }
    os << z.real();
    if (z.imag() >= 0) os << "+";
    os << z.imag() << "i";
    return os.str();
}

// spin given as "1/2", "3/2", "1", "1.5", ... -> doubled integer
inline int parse_two_s(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const int num = std::stoi(text.substr(0, slash));
        const int den = std::stoi(text.substr(slash + 1));
        if (den != 2 || num < 1) throw ConfigError("bad spin: " + text);
        return num;
    }
    const double s = std::stod(text);
    const int two_s = static_cast<int>(std::lround(2.0 * s));
    if (two_s < 1 || std::abs(2.0 * s - two_s) > 1e-12) throw ConfigError("bad spin: " + text);
    return two_s;
}

enum class OutputFormat { json, csv };

struct RunConfig {
    ModelParams params;
    std::optional<BoundaryCase> bc;
    std::string command;  // verify | spectrum | bethe | reproduce | check
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 12345;
    std::string output_path;
    OutputFormat output_format = OutputFormat::json;
    Complex spectral_point{0.3123, 0.0777};  // for `spectrum`
    std::string table;                       // for `reproduce`

    void set_kv(const std::string& key, const std::string& value) {
        if (key == "s") params.two_s = parse_two_s(value);
        else if (key == "N") params.sites = std::stoi(value);
        else if (key == "p") params.p = std::stoi(value);
        else if (key == "alpha_minus") params.alpha_minus = parse_complex(value);
        else if (key == "alpha_plus") params.alpha_plus = parse_complex(value);
        else if (key == "beta_minus") params.beta_minus = parse_complex(value);
        else if (key == "beta_plus") params.beta_plus = parse_complex(value);
        else if (key == "theta_minus") params.theta_minus = parse_complex(value);
        else if (key == "theta_plus") params.theta_plus = parse_complex(value);
        else if (key == "case") {
            if (value == "I") bc = BoundaryCase::I;
            else if (value == "II") bc = BoundaryCase::II;
            else throw ConfigError("case must be I or II, got: " + value);
        } else if (key == "seed") seed = std::stoull(value);
        else if (key == "out") output_path = value;
        else if (key == "format") {
            if (value == "json") output_format = OutputFormat::json;
            else if (value == "csv") output_format = OutputFormat::csv;
            else throw ConfigError("format must be csv or json, got: " + value);
        } else if (key == "u") spectral_point = parse_complex(value);
        else if (key.rfind("tol.", 0) == 0) tolerances[key.substr(4)] = std::stod(value);
        else throw ConfigError("unknown config key: " + key);
    }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::string trimmed;
            for (char ch : line)
                if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
            if (trimmed.empty()) continue;
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
            set_kv(trimmed.substr(0, eq), trimmed.substr(eq + 1));
        }
    }

    void validate() const {
        if (params.sites < 1) throw ConfigError("N must be positive");
        if (params.p < 1) throw ConfigError("p must be positive");
        if (params.two_s < 1) throw ConfigError("s must be at least 1/2");
        for (const auto& [name, tol] : tolerances)
            if (tol <= 0) throw ConfigError("tolerance " + name + " must be positive");
        if (command == "bethe") {
            if (!bc) throw ConfigError("bethe requires case (I or II)");
            if (params.p % 2 == 0) throw ConfigError("p must be odd");
            if (params.sites % 2 != 0) throw ConfigError("N must be even");
            validate_case(*bc, params);
        }
    }

    double tol(const std::string& name, double def) const {
        auto it = tolerances.find(name);
        return it == tolerances.end() ? def : it->second;
    }
};

}  // namespace openxxz
