#pragma once

#include <json.hpp>

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "monadcert/stability.hpp"

namespace monadcert {

struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// On-disk description of a monad (.monad.json): space block, terms block,
// maps block as row-major arrays of polynomial strings, and an optional
// block of named rational parameters substituted before parsing.
struct MonadDocument {
    std::string space_kind;  // "P" | "PxP" | "hirzebruch" | "blowup"
    std::vector<int> space_params;
    std::vector<std::pair<MultiDegree, int>> m0, m1, m2;
    std::vector<std::vector<std::string>> alpha, beta;
    std::vector<std::pair<std::string, std::string>> parameters;  // name -> default value

    SpaceDescriptor space() const {
        if (space_kind == "P") return SpaceDescriptor::projective(space_params.at(0));
        if (space_kind == "PxP")
            return SpaceDescriptor::product(space_params.at(0), space_params.at(1));
        if (space_kind == "hirzebruch") return SpaceDescriptor::hirzebruch(space_params.at(0));
        if (space_kind == "blowup") return SpaceDescriptor::blowup(space_params.at(0));
        throw DocumentError("unknown space kind '" + space_kind + "'");
    }
};

namespace detail {

inline std::vector<std::pair<MultiDegree, int>> terms_from_json(const json& j) {
    std::vector<std::pair<MultiDegree, int>> out;
    if (!j.is_array()) throw DocumentError("terms: array expected");
    for (const auto& t : j) {
        MultiDegree d = t.at("degree").get<MultiDegree>();
        int mult = t.at("multiplicity").get<int>();
        out.emplace_back(d, mult);
    }
    return out;
}

inline json terms_to_json(const std::vector<std::pair<MultiDegree, int>>& terms) {
    json out = json::array();
    for (const auto& [d, k] : terms) out.push_back(json{{"degree", d}, {"multiplicity", k}});
    return out;
}

inline bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Token-level textual substitution of parameter names by parenthesized
// exact rationals.
inline std::string substitute_params(const std::string& text,
                                     const std::map<std::string, Rat>& values) {
    std::string out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string tok = text.substr(i, j - i);
            auto it = values.find(tok);
            if (it != values.end())
                out += "(" + rat_str(it->second) + ")";
            else
                out += tok;
            i = j;
        } else {
            out.push_back(c);
            ++i;
        }
    }
    return out;
}

}  // namespace detail

inline MonadDocument monad_document_from_json(const json& j) {
    MonadDocument doc;
    const json& sp = j.at("space");
    doc.space_kind = sp.at("kind").get<std::string>();
    if (doc.space_kind == "P")
        doc.space_params = {sp.at("n").get<int>()};
    else if (doc.space_kind == "PxP")
        doc.space_params = {sp.at("n").get<int>(), sp.at("m").get<int>()};
    else if (doc.space_kind == "hirzebruch")
        doc.space_params = {sp.at("a").get<int>()};
    else if (doc.space_kind == "blowup")
        doc.space_params = {sp.at("l").get<int>()};
    else
        throw DocumentError("unknown space kind '" + doc.space_kind + "'");
    const json& terms = j.at("terms");
    doc.m0 = detail::terms_from_json(terms.at("m0"));
    doc.m1 = detail::terms_from_json(terms.at("m1"));
    doc.m2 = detail::terms_from_json(terms.at("m2"));
    const json& maps = j.at("maps");
    doc.alpha = maps.at("alpha").get<std::vector<std::vector<std::string>>>();
    doc.beta = maps.at("beta").get<std::vector<std::vector<std::string>>>();
    if (j.contains("parameters")) {
        for (const auto& [name, v] : j.at("parameters").items()) {
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            for (char c : name)
                if (!detail::ident_char(c)) throw DocumentError("bad parameter name: " + name);
            doc.parameters.emplace_back(name, s);
        }
    }
    return doc;
}

inline json monad_document_to_json(const MonadDocument& doc) {
    json sp{{"kind", doc.space_kind}};
    if (doc.space_kind == "P") sp["n"] = doc.space_params.at(0);
    if (doc.space_kind == "PxP") {
        sp["n"] = doc.space_params.at(0);
        sp["m"] = doc.space_params.at(1);
    }
    if (doc.space_kind == "hirzebruch") sp["a"] = doc.space_params.at(0);
    if (doc.space_kind == "blowup") sp["l"] = doc.space_params.at(0);
    json out{{"format", "monad/1"},
             {"space", sp},
             {"terms", json{{"m0", detail::terms_to_json(doc.m0)},
                            {"m1", detail::terms_to_json(doc.m1)},
                            {"m2", detail::terms_to_json(doc.m2)}}},
             {"maps", json{{"alpha", doc.alpha}, {"beta", doc.beta}}}};
    if (!doc.parameters.empty()) {
        json p = json::object();
        for (const auto& [k, v] : doc.parameters) p[k] = v;
        out["parameters"] = p;
    }
    return out;
}

inline MonadDocument load_monad_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DocumentError("invalid JSON in " + path + ": " + e.what());
    }
    try {
        return monad_document_from_json(j);
    } catch (const json::exception& e) {
        throw DocumentError("invalid monad document " + path + ": " + e.what());
    }
}

// Instantiates the document, substituting parameter values (overrides win
// over document defaults) and parsing all matrix entries exactly.
inline Monad build_monad(const MonadDocument& doc,
                         const std::map<std::string, Rat>& overrides = {}) {
    SpaceDescriptor space = doc.space();
    if (!space.has_cohomology())
        throw DocumentError("monads are supported on P^n and P^n x P^m only");
    VarContext ctx = space.var_context();

    std::map<std::string, Rat> values;
    for (const auto& [name, def] : doc.parameters) values[name] = rat_parse(def);
    for (const auto& [name, v] : overrides) values[name] = v;

    auto make_sum = [&](const std::vector<std::pair<MultiDegree, int>>& terms) {
        LineBundleSum s(space.picard_rank());
        for (const auto& [d, k] : terms) s.add(d, k);
        return s;
    };
    LineBundleSum m0 = make_sum(doc.m0), m1 = make_sum(doc.m1), m2 = make_sum(doc.m2);

    auto make_matrix = [&](const std::vector<std::vector<std::string>>& rows, int nr, int nc,
                           const char* name) {
        if (static_cast<int>(rows.size()) != nr)
            throw DocumentError(std::string(name) + ": expected " + std::to_string(nr) + " rows");
        PolyMatrix m(ctx, nr, nc);
        for (int i = 0; i < nr; ++i) {
            if (static_cast<int>(rows[i].size()) != nc)
                throw DocumentError(std::string(name) + ": row " + std::to_string(i) +
                                    " has wrong length");
            for (int j = 0; j < nc; ++j) {
                std::string text = detail::substitute_params(rows[i][j], values);
                try {
                    m.at(i, j) = parse_poly(text, ctx);
                } catch (const ParseError& e) {
                    throw DocumentError(std::string(name) + "[" + std::to_string(i) + "][" +
                                        std::to_string(j) + "]: " + e.what());
                }
            }
        }
        return m;
    };
    PolyMatrix alpha = make_matrix(doc.alpha, m1.rank(), m0.rank(), "alpha");
    PolyMatrix beta = make_matrix(doc.beta, m2.rank(), m1.rank(), "beta");
    return Monad(space, m0, m1, m2, alpha, beta);
}

// --- certificate documents ----------------------------------------------------

inline json certificate_to_json(const Certificate& cert) {
    json steps = json::array();
    for (const auto& s : cert.steps)
        steps.push_back(json{{"op", s.op}, {"inputs", s.inputs}, {"output", s.output},
                             {"anchor", s.anchor}});
    json out{{"format", "certificate/1"},
             {"tool_version", kToolVersion},
             {"verdict", cert.verdict},
             {"assumptions", cert.assumptions},
             {"trail", steps}};
    if (!cert.detail.empty()) out["detail"] = cert.detail;
    if (cert.seed) {
        out["seed"] = *cert.seed;
        out["primes"] = cert.primes;
        if (cert.samples) out["samples"] = *cert.samples;
    }
    return out;
}

inline Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.verdict = j.at("verdict").get<std::string>();
    c.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    for (const auto& s : j.at("trail"))
        c.steps.push_back({s.at("op").get<std::string>(), s.at("inputs"), s.at("output"),
                           s.at("anchor").get<std::string>()});
    if (j.contains("detail")) c.detail = j.at("detail").get<std::string>();
    if (j.contains("seed")) {
        c.seed = j.at("seed").get<std::uint64_t>();
        c.primes = j.at("primes").get<std::vector<std::uint64_t>>();
        if (j.contains("samples")) c.samples = j.at("samples").get<std::uint64_t>();
    }
    return c;
}

// Canonical serialization: sorted keys, two-space indent, trailing newline.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline void emit_certificate(const Certificate& cert, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DocumentError("cannot write " + path);
    out << canonical_dump(certificate_to_json(cert));
    if (!out) throw DocumentError("write failure on " + path);
}

}  // namespace monadcert
