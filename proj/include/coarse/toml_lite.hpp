#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace coarse::toml {

// Minimal TOML subset: [table], [[array-of-tables]], dotted-free keys,
// integers, booleans, strings, homogeneous arrays of ints/strings.
// Enough for the shipped configs; everything else is a parse error.

struct Value;
using Table = std::map<std::string, Value>;

struct Value {
    std::variant<std::int64_t, bool, std::string, std::vector<std::int64_t>,
                 std::vector<std::string>, std::shared_ptr<Table>,
                 std::vector<std::shared_ptr<Table>>>
        v;

    bool is_table() const { return std::holds_alternative<std::shared_ptr<Table>>(v); }
    bool is_table_array() const {
        return std::holds_alternative<std::vector<std::shared_ptr<Table>>>(v);
    }
    std::int64_t as_int() const { return std::get<std::int64_t>(v); }
    bool as_bool() const { return std::get<bool>(v); }
    const std::string& as_str() const { return std::get<std::string>(v); }
    const std::vector<std::int64_t>& as_int_array() const {
        return std::get<std::vector<std::int64_t>>(v);
    }
    const std::vector<std::string>& as_str_array() const {
        return std::get<std::vector<std::string>>(v);
    }
    Table& as_table() { return *std::get<std::shared_ptr<Table>>(v); }
    const Table& as_table() const { return *std::get<std::shared_ptr<Table>>(v); }
    const std::vector<std::shared_ptr<Table>>& as_table_array() const {
        return std::get<std::vector<std::shared_ptr<Table>>>(v);
    }
};

struct parse_error : std::runtime_error {
    int line;
    parse_error(const std::string& msg, int line_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ")"), line(line_) {}
};

Table parse(const std::string& text);
Table parse_file(const std::string& path);

// lookup helpers (throw with key name on missing/mistyped values)
std::int64_t get_int(const Table& t, const std::string& key);
std::int64_t get_int_or(const Table& t, const std::string& key, std::int64_t dflt);
std::string get_str(const Table& t, const std::string& key);
std::string get_str_or(const Table& t, const std::string& key, const std::string& dflt);
std::vector<std::int64_t> get_int_array_or(const Table& t, const std::string& key,
                                           std::vector<std::int64_t> dflt);
bool has(const Table& t, const std::string& key);

}  // namespace coarse::toml
