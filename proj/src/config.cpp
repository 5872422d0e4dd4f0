#include "circov/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "circov/errors.hpp"

namespace circov {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r";
  auto a = s.find_first_not_of(ws);
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

std::string unquote(const std::string& v, int line) {
  if (v.size() < 2 || v.front() != '"') return v;
  if (v.back() != '"') throw InvalidInput("config line " + std::to_string(line) + ": unterminated quote");
  std::string out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] == '\\' && i + 2 < v.size()) {
      const char e = v[++i];
      out += e == 'n' ? '\n' : e;
    } else {
      out += v[i];
    }
  }
  return out;
}

std::string quote_if_needed(const std::string& v) {
  bool need = v.empty() || v.front() == ' ' || v.back() == ' ' || v.front() == '"' ||
              v.find('#') != std::string::npos || v.find('\n') != std::string::npos;
  if (!need) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw InvalidInput("config line " + std::to_string(line) + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!section.empty() && !valid_key(section))
        throw InvalidInput("config line " + std::to_string(line) + ": invalid section name '" + section + "'");
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) throw InvalidInput("config line " + std::to_string(line) + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (!valid_key(key)) throw InvalidInput("config line " + std::to_string(line) + ": invalid key '" + key + "'");
    if (value.empty() || value.front() != '"') {
      auto hash = value.find(" #");
      if (hash != std::string::npos) value = trim(value.substr(0, hash));
    }
    c.values_[section.empty() ? key : section + "." + key] = unquote(value, line);
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string Config::serialize() const {
  std::ostringstream out;
  std::map<std::string, std::map<std::string, std::string>> sections;
  for (const auto& [k, v] : values_) {
    auto dot = k.rfind('.');
    if (dot == std::string::npos)
      sections[""][k] = v;
    else
      sections[k.substr(0, dot)][k.substr(dot + 1)] = v;
  }
  bool first = true;
  for (const auto& [name, entries] : sections) {
    if (!name.empty()) {
      if (!first) out << "\n";
      out << "[" << name << "]\n";
    }
    for (const auto& [k, v] : entries) out << k << " = " << quote_if_needed(v) << "\n";
    first = false;
  }
  return out.str();
}

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw InvalidInput("invalid config key '" + key + "'");
  values_[key] = value;
}

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

void Config::merge(const Config& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

}  // namespace circov
