#pragma once
//
// Text specifications for weights, symbols and measures:
//
//   weight   std:alpha=A | log:beta=B | exp:c=C | file:PATH | upsilon:k=K,base=WEIGHT
//   symbol   log | pow:s=S | carleson:a=A[,theta=T],gamma=G | poly:c0,c1,... | lacunary
//   measure  atom:re=X,im=Y,mass=M | radial:pow=E | symbol:g=SYMBOL,beta=B,order=K
//            | star:g=SYMBOL,n=N,k=K | tau:g=SYMBOL,n=N,k=K
//
// Within a parameter list, a token without '=' continues the previous value,
// so star:g=poly:0,1,n=1,k=0 reads g as poly:0,1.
//

#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "measures.hpp"
#include "series.hpp"
#include "weights.hpp"

namespace bergman_lab {

namespace detail {

inline std::pair<std::string, std::string> split_kind(const std::string& spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        return {spec, ""};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// key=value list with continuation tokens.
inline std::map<std::string, std::string> parse_params(const std::string& body, const std::string& context)
{
    std::map<std::string, std::string> out;
    if (body.empty())
        return out;
    std::string last;
    for (const auto& tok : split(body, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            if (last.empty())
                fail(ErrorKind::config, context + ": token '" + tok + "' has no key");
            out[last] += "," + tok;
            continue;
        }
        last = tok.substr(0, eq);
        if (out.count(last))
            fail(ErrorKind::config, context + ": duplicate key '" + last + "'");
        out[last] = tok.substr(eq + 1);
    }
    return out;
}

inline double to_number(const std::string& s, const std::string& context)
{
    if (s.empty())
        fail(ErrorKind::config, context + ": empty number");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        fail(ErrorKind::config, context + ": not a number: '" + s + "'");
    return v;
}

inline int to_integer(const std::string& s, const std::string& context)
{
    const double v = to_number(s, context);
    if (v != static_cast<double>(static_cast<int>(v)))
        fail(ErrorKind::config, context + ": not an integer: '" + s + "'");
    return static_cast<int>(v);
}

inline const std::string& require(const std::map<std::string, std::string>& p, const std::string& key,
                                  const std::string& context)
{
    const auto it = p.find(key);
    if (it == p.end())
        fail(ErrorKind::config, context + ": missing '" + key + "'");
    return it->second;
}

inline void allow_only(const std::map<std::string, std::string>& p, std::initializer_list<const char*> keys,
                       const std::string& context)
{
    for (const auto& [k, v] : p) {
        bool ok = false;
        for (const char* a : keys)
            ok = ok || k == a;
        if (!ok)
            fail(ErrorKind::config, context + ": unknown key '" + k + "'");
    }
}

} // namespace detail

inline Weight parse_weight(const std::string& spec)
{
    const auto [kind, body] = detail::split_kind(spec);
    const std::string ctx = "weight '" + spec + "'";
    if (kind == "file") {
        if (body.empty())
            fail(ErrorKind::config, ctx + ": missing path");
        return Weight::from_file(body);
    }
    if (kind == "upsilon") {
        // base may itself contain ':' and ','; take everything after base=
        const auto pos = body.find("base=");
        if (pos == std::string::npos)
            fail(ErrorKind::config, ctx + ": missing 'base'");
        const auto head = detail::parse_params(body.substr(0, pos == 0 ? 0 : pos - 1), ctx);
        detail::allow_only(head, {"k"}, ctx);
        const int k = detail::to_integer(detail::require(head, "k", ctx), ctx);
        return Weight::kernel_transform(parse_weight(body.substr(pos + 5)), k);
    }
    const auto p = detail::parse_params(body, ctx);
    if (kind == "std") {
        detail::allow_only(p, {"alpha"}, ctx);
        return Weight::standard_alpha(detail::to_number(detail::require(p, "alpha", ctx), ctx));
    }
    if (kind == "log") {
        detail::allow_only(p, {"beta"}, ctx);
        return Weight::log_doubling(detail::to_number(detail::require(p, "beta", ctx), ctx));
    }
    if (kind == "exp") {
        detail::allow_only(p, {"c"}, ctx);
        return Weight::exponential(detail::to_number(detail::require(p, "c", ctx), ctx));
    }
    fail(ErrorKind::config, ctx + ": unknown kind '" + kind + "'");
}

inline AnalyticFn parse_symbol(const std::string& spec, int truncation = default_truncation)
{
    const auto [kind, body] = detail::split_kind(spec);
    const std::string ctx = "symbol '" + spec + "'";
    AnalyticFn f;
    if (kind == "log") {
        if (!body.empty())
            fail(ErrorKind::config, ctx + ": takes no parameters");
        f = symbol_log(truncation);
    } else if (kind == "lacunary") {
        if (!body.empty())
            fail(ErrorKind::config, ctx + ": takes no parameters");
        f = symbol_lacunary(truncation);
    } else if (kind == "pow") {
        const auto p = detail::parse_params(body, ctx);
        detail::allow_only(p, {"s"}, ctx);
        f = symbol_power(detail::to_number(detail::require(p, "s", ctx), ctx), truncation);
    } else if (kind == "carleson") {
        const auto p = detail::parse_params(body, ctx);
        detail::allow_only(p, {"a", "theta", "gamma"}, ctx);
        const double a = detail::to_number(detail::require(p, "a", ctx), ctx);
        const double theta = p.count("theta") ? detail::to_number(p.at("theta"), ctx) : 0.0;
        const double gamma = p.count("gamma") ? detail::to_number(p.at("gamma"), ctx) : 4.0;
        f = symbol_carleson(std::polar(a, theta), gamma, truncation);
    } else if (kind == "poly") {
        if (body.empty())
            fail(ErrorKind::config, ctx + ": needs coefficients");
        std::vector<Complex> c;
        for (const auto& tok : detail::split(body, ','))
            c.emplace_back(detail::to_number(tok, ctx), 0.0);
        f = AnalyticFn::polynomial(std::move(c));
    } else {
        fail(ErrorKind::config, ctx + ": unknown family '" + kind + "'");
    }
    f.set_label(spec);
    return f;
}

inline MeasureSpec parse_measure(const std::string& spec)
{
    const auto [kind, body] = detail::split_kind(spec);
    const std::string ctx = "measure '" + spec + "'";
    const auto p = detail::parse_params(body, ctx);
    if (kind == "atom") {
        detail::allow_only(p, {"re", "im", "mass"}, ctx);
        const double re = p.count("re") ? detail::to_number(p.at("re"), ctx) : 0.0;
        const double im = p.count("im") ? detail::to_number(p.at("im"), ctx) : 0.0;
        const double mass = p.count("mass") ? detail::to_number(p.at("mass"), ctx) : 1.0;
        return MeasureSpec::atoms({{Complex(re, im), mass}});
    }
    if (kind == "radial") {
        detail::allow_only(p, {"pow"}, ctx);
        return MeasureSpec::radial_power(detail::to_number(detail::require(p, "pow", ctx), ctx));
    }
    if (kind == "symbol") {
        detail::allow_only(p, {"g", "beta", "order"}, ctx);
        return MeasureSpec::symbol_density(parse_symbol(detail::require(p, "g", ctx)),
                                           detail::to_number(detail::require(p, "beta", ctx), ctx),
                                           detail::to_integer(detail::require(p, "order", ctx), ctx));
    }
    if (kind == "star" || kind == "tau") {
        detail::allow_only(p, {"g", "n", "k"}, ctx);
        const AnalyticFn g = parse_symbol(detail::require(p, "g", ctx));
        const int n = detail::to_integer(detail::require(p, "n", ctx), ctx);
        const int k = detail::to_integer(detail::require(p, "k", ctx), ctx);
        return kind == "star" ? MeasureSpec::star_density(g, n, k) : MeasureSpec::hardy_star_density(g, n, k);
    }
    fail(ErrorKind::config, ctx + ": unknown kind '" + kind + "'");
}

} // namespace bergman_lab
