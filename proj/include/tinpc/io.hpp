#pragma once

#include "tinpc/channel.hpp"
#include "tinpc/tuples.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tinpc {

/// Malformed JSON or a document that does not follow the channel schema.
/// line and column are 1-based; both are 0 for schema errors.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                  : msg),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Channel document: {"K": 2, "name": "...", "receivers": [{"states": [["1","0.5"], ...]}, ...],
/// "targets": [["0.5","0.5"], ...]}. Strength values may be strings or JSON numbers.
struct ChannelFile {
    std::optional<std::string> name;
    CompoundChannel channel;
    std::vector<GdofTuple> targets;
};

/// Numbers are taken through their shortest decimal rendering, so 0.1 means 1/10.
inline Rational rational_from_json(const nlohmann::json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number()) return parse_rational(j.dump());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a decimal string or number");
}

inline nlohmann::json rational_to_json(const Rational& x) { return to_string(x); }

inline nlohmann::json rationals_to_json(const std::vector<Rational>& xs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : xs) a.push_back(rational_to_json(x));
    return a;
}

inline nlohmann::json allocation_to_json(const Allocation& r) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : r) a.push_back(x ? rational_to_json(*x) : nlohmann::json(nullptr));
    return a;
}

inline std::vector<Rational> rationals_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace detail

/// Parses and validates a channel document. Throws ParseError for syntax and
/// schema problems, ChannelError when the data breaks a channel invariant.
inline ChannelFile parse_channel_file(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, column] = detail::line_column(text, e.byte);
        throw ParseError("malformed JSON", line, column);
    }
    if (!doc.is_object()) throw ParseError("channel document must be a JSON object");
    if (!doc.contains("K") || !doc["K"].is_number_integer()) throw ParseError("field 'K' must be an integer");
    const auto K = doc["K"].get<long long>();
    if (K < 0) throw ParseError("field 'K' must be non-negative");
    if (!doc.contains("receivers") || !doc["receivers"].is_array()) throw ParseError("field 'receivers' must be an array");

    std::vector<StateSet> receivers;
    for (std::size_t k = 0; k < doc["receivers"].size(); ++k) {
        const auto& rx = doc["receivers"][k];
        const std::string where = "receivers[" + std::to_string(k) + "]";
        if (!rx.is_object() || !rx.contains("states") || !rx["states"].is_array()) {
            throw ParseError(where + ": expected an object with array 'states'");
        }
        StateSet states;
        for (std::size_t l = 0; l < rx["states"].size(); ++l)
            states.push_back(rationals_from_json(rx["states"][l], where + ".states[" + std::to_string(l) + "]"));
        receivers.push_back(std::move(states));
    }

    ChannelFile file{std::nullopt, CompoundChannel(static_cast<std::size_t>(K), std::move(receivers)), {}};
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ParseError("field 'name' must be a string");
        file.name = doc["name"].get<std::string>();
    }
    if (doc.contains("targets")) {
        if (!doc["targets"].is_array()) throw ParseError("field 'targets' must be an array");
        for (std::size_t t = 0; t < doc["targets"].size(); ++t) {
            auto d = rationals_from_json(doc["targets"][t], "targets[" + std::to_string(t) + "]");
            if (d.size() != file.channel.users()) throw ParseError("targets[" + std::to_string(t) + "]: wrong length");
            try {
                file.targets.emplace_back(std::move(d));
            } catch (const std::invalid_argument& e) {
                throw ParseError("targets[" + std::to_string(t) + "]: " + e.what());
            }
        }
    }
    return file;
}

inline ChannelFile load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_channel_file(buf.str());
}

inline nlohmann::json channel_to_json(const CompoundChannel& ch, const std::optional<std::string>& name = std::nullopt) {
    nlohmann::json doc;
    doc["K"] = ch.users();
    if (name) doc["name"] = *name;
    doc["receivers"] = nlohmann::json::array();
    for (const auto& states : ch.receivers()) {
        nlohmann::json rx;
        rx["states"] = nlohmann::json::array();
        for (const auto& s : states) rx["states"].push_back(rationals_to_json(s));
        doc["receivers"].push_back(rx);
    }
    return doc;
}

}  // namespace tinpc
