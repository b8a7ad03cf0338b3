#pragma once

// Initial-function specs:
//   const:<c>          y = c
//   lin:<p>,<q>        y = p t + q
//   sin:<A>,<w>        y = A sin(w t)
//   file:<path>        two-column CSV t,y covering [-tau, 0]; one header line allowed

#include <algorithm>
#include <fstream>
#include <string>
#include <string_view>

#include "fracdde/errors.hpp"
#include "fracdde/io/format.hpp"
#include "fracdde/model.hpp"

namespace fracdde::io {

inline phi::Sampled read_sampled_phi(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("phi file: cannot open '" + path + "'");
    phi::Sampled s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cols = split(line, ',');
        const std::string where = "phi file " + path + ":" + std::to_string(lineno);
        if (cols.size() != 2) throw ConfigError(where + ": expected two columns t,y");
        try {
            s.nodes.emplace_back(parse_number(cols[0], where), parse_number(cols[1], where));
        } catch (const ConfigError&) {
            if (lineno == 1 && s.nodes.empty()) continue;  // header
            throw;
        }
    }
    if (s.nodes.empty()) throw ConfigError("phi file " + path + ": no data rows");
    for (std::size_t i = 1; i < s.nodes.size(); ++i) {
        if (!(s.nodes[i].first > s.nodes[i - 1].first)) {
            throw ConfigError("phi file " + path + ": t must be strictly increasing");
        }
    }
    return s;
}

inline InitialFunction parse_phi(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("--phi: expected <kind>:<args>, got '" + std::string(spec) + "'");
    }
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view args = spec.substr(colon + 1);
    auto two = [&](std::string_view name) {
        const auto parts = split(args, ',');
        if (parts.size() != 2) throw ConfigError("--phi " + std::string(name) + ": expected two numbers");
        return std::pair{parse_number(parts[0], "--phi"), parse_number(parts[1], "--phi")};
    };
    if (kind == "const") return phi::Constant{parse_number(args, "--phi const")};
    if (kind == "lin") {
        const auto [p, q] = two("lin");
        return phi::Linear{p, q};
    }
    if (kind == "sin") {
        const auto [amp, w] = two("sin");
        return phi::Sinusoid{amp, w};
    }
    if (kind == "file") {
        if (args.empty()) throw ConfigError("--phi file: missing path");
        return read_sampled_phi(std::string(args));
    }
    throw ConfigError("--phi: unknown kind '" + std::string(kind) + "' (const, lin, sin, file)");
}

}  // namespace fracdde::io
