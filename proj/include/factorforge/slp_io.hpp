#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"

namespace factorforge {

// SLP text format, line oriented:
//   nvars <n>
//   g<i> = input x<j>        (x variables are 1-based in the text)
//   g<i> = const <residue>
//   g<i> = add g<a> g<b>
//   g<i> = mul g<a> g<b>
//   output g<i>
// '#' starts a comment; gate ids must be strictly increasing and operands must
// be declared before use. serialize(parse(text)) is byte-stable.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline bool parse_prefixed(std::string_view s, char prefix, std::uint64_t& out) {
    if (s.size() < 2 || s[0] != prefix) return false;
    return parse_u64(s.substr(1), out);
}

} // namespace detail

inline Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    bool have_nvars = false;
    std::uint64_t nvars = 0;
    std::map<std::uint64_t, GateId> ids; // textual id -> dense index
    std::uint64_t last_id = 0;
    bool any_gate = false;
    std::vector<Gate> gates;
    std::vector<GateId> outputs;

    auto err = [&](const std::string& msg) -> void { fail(Errc::parse, msg, lineno); };

    auto lookup = [&](std::string_view tok) -> GateId {
        std::uint64_t id;
        if (!detail::parse_prefixed(tok, 'g', id))
            err("expected a gate reference like g3, got '" + std::string(tok) + "'");
        auto it = ids.find(id);
        if (it == ids.end())
            err("forward reference or unknown gate g" + std::to_string(id));
        return it->second;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tok = detail::split_ws(line);
        if (tok.empty()) continue;

        if (!have_nvars) {
            if (tok[0] != "nvars" || tok.size() != 2 || !detail::parse_u64(tok[1], nvars))
                err("expected header 'nvars <n>'");
            if (nvars > 1u << 20) err("implausible variable count");
            have_nvars = true;
            continue;
        }

        if (tok[0] == "output") {
            if (tok.size() != 2) err("expected 'output g<i>'");
            outputs.push_back(lookup(tok[1]));
            continue;
        }

        // gate definition: g<i> = <op> ...
        std::uint64_t id;
        if (!detail::parse_prefixed(tok[0], 'g', id)) err("expected a gate definition or 'output'");
        if (tok.size() < 3 || tok[1] != "=") err("expected '=' after gate id");
        if (any_gate && id <= last_id) err("gate ids must be strictly increasing");

        const std::string_view op = tok[2];
        if (op == "input") {
            std::uint64_t var;
            if (tok.size() != 4 || !detail::parse_prefixed(tok[3], 'x', var))
                err("expected 'input x<j>'");
            if (var < 1 || var > nvars)
                err("unknown variable x" + std::to_string(var));
            gates.push_back(Gate::input(std::uint32_t(var - 1)));
        } else if (op == "const") {
            std::uint64_t v;
            if (tok.size() != 4 || !detail::parse_u64(tok[3], v))
                err("expected 'const <decimal residue>'");
            gates.push_back(Gate::constant(Fp(v)));
        } else if (op == "add" || op == "mul") {
            if (tok.size() != 5) err("expected two operands");
            GateId a = lookup(tok[3]);
            GateId b = lookup(tok[4]);
            gates.push_back(op == "add" ? Gate::add(a, b) : Gate::mul(a, b));
        } else {
            err("unknown operation '" + std::string(op) + "'");
        }
        ids[id] = GateId(gates.size() - 1);
        last_id = id;
        any_gate = true;
    }

    if (!have_nvars) fail(Errc::parse, "empty input: missing 'nvars' header", 1);
    if (outputs.empty()) fail(Errc::parse, "circuit declares no outputs", lineno);
    return Circuit(std::uint32_t(nvars), std::move(gates), std::move(outputs));
}

inline std::string serialize_circuit(const Circuit& c) {
    std::string out = "nvars " + std::to_string(c.nvars()) + "\n";
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        const Gate& g = c.gates()[i];
        out += "g" + std::to_string(i) + " = ";
        switch (g.kind) {
            case GateKind::Input: out += "input x" + std::to_string(g.a + 1); break;
            case GateKind::Const: out += "const " + g.c.to_string(); break;
            case GateKind::Add:
                out += "add g" + std::to_string(g.a) + " g" + std::to_string(g.b);
                break;
            case GateKind::Mul:
                out += "mul g" + std::to_string(g.a) + " g" + std::to_string(g.b);
                break;
        }
        out += "\n";
    }
    for (GateId o : c.outputs()) out += "output g" + std::to_string(o) + "\n";
    return out;
}

} // namespace factorforge
