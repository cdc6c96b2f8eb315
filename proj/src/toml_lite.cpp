#include "coarse/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace coarse::toml {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// drop a trailing comment, respecting quoted strings
std::string drop_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

std::string parse_quoted(const std::string& raw, int line) {
    if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"')
        throw parse_error("expected a quoted string", line);
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
        if (raw[i] == '\\') {
            if (i + 2 >= raw.size()) throw parse_error("dangling escape", line);
            char c = raw[++i];
            switch (c) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: throw parse_error("unsupported escape", line);
            }
        } else {
            out += raw[i];
        }
    }
    return out;
}

Value parse_value(const std::string& raw, int line) {
    if (raw.empty()) throw parse_error("empty value", line);
    if (raw == "true") return Value{true};
    if (raw == "false") return Value{false};
    if (raw.front() == '"') return Value{parse_quoted(raw, line)};
    if (raw.front() == '[') {
        if (raw.back() != ']') throw parse_error("unterminated array", line);
        std::string body = strip(raw.substr(1, raw.size() - 2));
        std::vector<std::string> parts;
        bool in_str = false;
        std::string cur;
        for (char c : body) {
            if (c == '"') in_str = !in_str;
            if (c == ',' && !in_str) {
                parts.push_back(strip(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!strip(cur).empty()) parts.push_back(strip(cur));
        if (parts.empty()) return Value{std::vector<std::int64_t>{}};
        if (parts.front().front() == '"') {
            std::vector<std::string> out;
            for (const auto& p : parts) out.push_back(parse_quoted(p, line));
            return Value{out};
        }
        std::vector<std::int64_t> out;
        for (const auto& p : parts) {
            Value v = parse_value(p, line);
            if (!std::holds_alternative<std::int64_t>(v.v))
                throw parse_error("arrays must be all-int or all-string", line);
            out.push_back(v.as_int());
        }
        return Value{out};
    }
    // integer
    std::size_t pos = 0;
    try {
        std::int64_t n = std::stoll(raw, &pos);
        if (pos == raw.size()) return Value{n};
    } catch (...) {
    }
    throw parse_error("cannot parse value '" + raw + "'", line);
}

// navigate (creating as needed) to the table named by a dotted header path
Table* open_table(Table& root, const std::string& path, bool array_entry, int line) {
    std::vector<std::string> parts;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '.')) {
        part = strip(part);
        if (!valid_key(part)) throw parse_error("bad table name '" + path + "'", line);
        parts.push_back(part);
    }
    if (parts.empty()) throw parse_error("empty table name", line);
    Table* cur = &root;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        bool last = i + 1 == parts.size();
        auto it = cur->find(parts[i]);
        if (last && array_entry) {
            if (it == cur->end())
                it = cur->emplace(parts[i], Value{std::vector<std::shared_ptr<Table>>{}}).first;
            if (!it->second.is_table_array())
                throw parse_error("key '" + parts[i] + "' is not an array of tables", line);
            auto& arr = std::get<std::vector<std::shared_ptr<Table>>>(it->second.v);
            arr.push_back(std::make_shared<Table>());
            return arr.back().get();
        }
        if (it == cur->end())
            it = cur->emplace(parts[i], Value{std::make_shared<Table>()}).first;
        if (it->second.is_table()) {
            cur = &it->second.as_table();
        } else if (it->second.is_table_array()) {
            auto& arr = std::get<std::vector<std::shared_ptr<Table>>>(it->second.v);
            if (arr.empty()) throw parse_error("empty table array '" + parts[i] + "'", line);
            cur = arr.back().get();
        } else {
            throw parse_error("key '" + parts[i] + "' is not a table", line);
        }
    }
    return cur;
}

}  // namespace

Table parse(const std::string& text) {
    Table root;
    Table* cur = &root;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(drop_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            bool array_entry = line.size() > 1 && line[1] == '[';
            std::string close = array_entry ? "]]" : "]";
            if (line.substr(line.size() - close.size()) != close)
                throw parse_error("unterminated table header", lineno);
            std::string name = line.substr(array_entry ? 2 : 1,
                                           line.size() - 2 * (array_entry ? 2 : 1));
            cur = open_table(root, strip(name), array_entry, lineno);
            continue;
        }
        std::size_t eq = std::string::npos;
        bool in_str = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '=' && !in_str) {
                eq = i;
                break;
            }
        }
        if (eq == std::string::npos) throw parse_error("expected key = value", lineno);
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (!valid_key(key)) throw parse_error("bad key '" + key + "'", lineno);
        if (cur->count(key)) throw parse_error("duplicate key '" + key + "'", lineno);
        (*cur)[key] = parse_value(val, lineno);
    }
    return root;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::int64_t get_int(const Table& t, const std::string& key) {
    auto it = t.find(key);
    if (it == t.end()) throw std::runtime_error("missing required key '" + key + "'");
    if (!std::holds_alternative<std::int64_t>(it->second.v))
        throw std::runtime_error("key '" + key + "' must be an integer");
    return it->second.as_int();
}

std::int64_t get_int_or(const Table& t, const std::string& key, std::int64_t dflt) {
    return t.count(key) ? get_int(t, key) : dflt;
}

std::string get_str(const Table& t, const std::string& key) {
    auto it = t.find(key);
    if (it == t.end()) throw std::runtime_error("missing required key '" + key + "'");
    if (!std::holds_alternative<std::string>(it->second.v))
        throw std::runtime_error("key '" + key + "' must be a string");
    return it->second.as_str();
}

std::string get_str_or(const Table& t, const std::string& key, const std::string& dflt) {
    return t.count(key) ? get_str(t, key) : dflt;
}

std::vector<std::int64_t> get_int_array_or(const Table& t, const std::string& key,
                                           std::vector<std::int64_t> dflt) {
    auto it = t.find(key);
    if (it == t.end()) return dflt;
    if (std::holds_alternative<std::int64_t>(it->second.v)) return {it->second.as_int()};
    if (!std::holds_alternative<std::vector<std::int64_t>>(it->second.v))
        throw std::runtime_error("key '" + key + "' must be an integer array");
    return it->second.as_int_array();
}

bool has(const Table& t, const std::string& key) { return t.count(key) != 0; }

}  // namespace coarse::toml
