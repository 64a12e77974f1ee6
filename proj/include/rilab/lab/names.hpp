#pragma once

// Text forms of spaces and kernels, e.g. "grand(3,5,1,1)", "lorentz-pow(2)",
// "fejer(10)", "generalized(256,2,1)". Unknown names come back with the
// closest known family as a suggestion.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rilab/error.hpp"
#include "rilab/kernels.hpp"
#include "rilab/ri_spaces.hpp"

namespace rilab::lab {

struct ParsedCall {
    std::string name;
    std::vector<double> args;
};

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

inline std::string nearest(std::string_view name, const std::vector<std::string>& known) {
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& k : known) {
        const auto d = edit_distance(name, k);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

/// "name(a,b,...)" or a bare "name".
inline ParsedCall parse_call(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
    ParsedCall out;
    const auto open = s.find('(');
    if (open == std::string::npos) {
        out.name = s;
        return out;
    }
    require(s.back() == ')', ErrorKind::ConfigError, "missing ')' in \"" + std::string(text) + "\"");
    out.name = s.substr(0, open);
    const std::string inner = s.substr(open + 1, s.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= inner.size() && !inner.empty()) {
        const auto comma = inner.find(',', pos);
        const std::string tok = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok == "inf" || tok == "+inf") {
            out.args.push_back(infinity);
        } else if (tok == "-inf") {
            out.args.push_back(-infinity);
        } else {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            require(!tok.empty() && end == tok.c_str() + tok.size(), ErrorKind::ConfigError,
                    "bad number \"" + tok + "\" in \"" + std::string(text) + "\"");
            out.args.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline const std::vector<std::string>& space_families() {
    static const std::vector<std::string> names{"lp",        "grand",       "orlicz-zygmund", "orlicz-pow",
                                                "orlicz-exp", "lorentz-pow", "lorentz-powlog"};
    return names;
}

inline const std::vector<std::string>& kernel_families() {
    static const std::vector<std::string> names{"fejer", "fejer-discrete", "generalized", "fejer-power"};
    return names;
}

namespace detail {

inline void expect_args(const ParsedCall& c, std::size_t count, std::string_view usage) {
    require(c.args.size() == count, ErrorKind::ConfigError,
            "\"" + c.name + "\" takes " + std::to_string(count) + " argument(s): " + std::string(usage));
}

inline std::string unknown(std::string_view what, const std::string& name, const std::vector<std::string>& known) {
    return "unknown " + std::string(what) + " family \"" + name + "\"; did you mean \"" + nearest(name, known) + "\"?";
}

// argument errors of the numeric layer become configuration errors
template <class F>
auto as_config(const std::string& text, const F& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ConfigError) throw;
        throw Error(ErrorKind::ConfigError, "\"" + text + "\": " + e.what());
    }
}

} // namespace detail

inline SpaceSpec parse_space(const std::string& text) {
    const auto c = parse_call(text);
    return detail::as_config(text, [&] {
        if (c.name == "lp") {
            detail::expect_args(c, 1, "lp(p)");
            return SpaceSpec::lp(c.args[0]);
        }
        if (c.name == "grand") {
            detail::expect_args(c, 4, "grand(a,b,alpha,beta)");
            return SpaceSpec::grand(c.args[0], c.args[1], c.args[2], c.args[3]);
        }
        if (c.name == "orlicz-zygmund") {
            detail::expect_args(c, 2, "orlicz-zygmund(p,r)");
            require(c.args[0] >= 1.0, ErrorKind::ConfigError, "Zygmund space needs p >= 1");
            return SpaceSpec::zygmund(c.args[0], c.args[1]);
        }
        if (c.name == "orlicz-pow") {
            detail::expect_args(c, 1, "orlicz-pow(p)");
            return SpaceSpec::orlicz(OrliczFunction::power(c.args[0]));
        }
        if (c.name == "orlicz-exp") {
            detail::expect_args(c, 0, "orlicz-exp");
            return SpaceSpec::orlicz(OrliczFunction::exponential());
        }
        if (c.name == "lorentz-pow") {
            detail::expect_args(c, 1, "lorentz-pow(q)");
            return SpaceSpec::lorentz(LorentzPhiSpec::power(c.args[0]));
        }
        if (c.name == "lorentz-powlog") {
            detail::expect_args(c, 2, "lorentz-powlog(q,s)");
            return SpaceSpec::lorentz(LorentzPhiSpec::power_log(c.args[0], c.args[1]));
        }
        throw Error(ErrorKind::ConfigError, detail::unknown("space", c.name, space_families()));
    });
}

inline KernelSpec parse_kernel(const std::string& text) {
    const auto c = parse_call(text);
    return detail::as_config(text, [&] {
        KernelSpec k;
        if (c.name == "fejer") {
            detail::expect_args(c, 1, "fejer(n)");
            k = KernelSpec::fejer(c.args[0]);
        } else if (c.name == "fejer-discrete") {
            detail::expect_args(c, 1, "fejer-discrete(n)");
            require(c.args[0] == std::floor(c.args[0]), ErrorKind::ConfigError, "discrete Fejer degree must be an integer");
            k = KernelSpec::fejer_discrete(static_cast<int>(c.args[0]));
        } else if (c.name == "generalized") {
            detail::expect_args(c, 3, "generalized(n,alpha,beta)");
            k = KernelSpec::generalized(c.args[0], c.args[1], c.args[2]);
        } else if (c.name == "fejer-power") {
            detail::expect_args(c, 2, "fejer-power(n,m)");
            require(c.args[1] == std::floor(c.args[1]), ErrorKind::ConfigError, "power must be an integer");
            k = KernelSpec::power_of_fejer(c.args[0], static_cast<int>(c.args[1]));
        } else {
            throw Error(ErrorKind::ConfigError, detail::unknown("kernel", c.name, kernel_families()));
        }
        k.validate();
        return k;
    });
}

/// Orlicz function behind an Orlicz-type space name.
inline OrliczFunction parse_orlicz(const std::string& text) {
    const auto s = parse_space(text);
    if (const auto* o = std::get_if<OrliczSpec>(&s.kind)) return o->phi;
    if (const auto* z = std::get_if<ZygmundSpec>(&s.kind)) return z->orlicz();
    throw Error(ErrorKind::ConfigError, "\"" + text + "\" is not an Orlicz space");
}

inline LorentzPhiSpec parse_lorentz(const std::string& text) {
    const auto s = parse_space(text);
    if (const auto* l = std::get_if<LorentzSpec>(&s.kind)) return l->phi;
    throw Error(ErrorKind::ConfigError, "\"" + text + "\" is not a Lorentz space");
}

} // namespace rilab::lab
