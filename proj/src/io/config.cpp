#include "deepsoh/io/config.hpp"

#include <charconv>
#include <fstream>

#include "deepsoh/errors.hpp"

namespace deepsoh::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, std::filesystem::path directory) {
  ConfigFile file;
  file.directory_ = std::move(directory);
  std::string raw;
  int line = 0;
  ConfigSection* current = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) throw InputError("malformed section header '" + text + "'", line);
      const std::string name = trim(text.substr(1, text.size() - 2));
      for (const auto& s : file.sections_) {
        if (s.name == name) throw InputError("section [" + name + "] appears twice", line);
      }
      file.sections_.push_back({name, line, {}});
      current = &file.sections_.back();
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw InputError("expected 'key = value', got '" + text + "'", line);
    if (!current) throw InputError("entry outside of any [section]", line);
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw InputError("empty key", line);
    if (value.empty()) throw InputError("key '" + key + "' has no value", line);
    current->entries.push_back({std::move(key), std::move(value), line});
  }
  return file;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return parse(in, path.parent_path());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

const ConfigSection* ConfigFile::section(const std::string& name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

double parse_number(const std::string& text, int line) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InputError("'" + text + "' is not a number", line);
  return v;
}

int parse_integer(const std::string& text, int line) {
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InputError("'" + text + "' is not an integer", line);
  return v;
}

SectionReader::SectionReader(const ConfigFile& file, const std::string& name, bool required)
    : file_(file), name_(name), section_(file.section(name)) {
  if (required && !section_) throw InputError("missing section [" + name + "]");
}

const ConfigEntry* SectionReader::find(const std::string& key) const {
  if (!section_) return nullptr;
  const ConfigEntry* hit = nullptr;
  for (const auto& e : section_->entries) {
    if (e.key != key) continue;
    if (hit) throw InputError("[" + name_ + "] " + key + " given twice", e.line);
    hit = &e;
  }
  used_.insert(key);
  return hit;
}

double SectionReader::number(const std::string& key) const {
  const auto* e = find(key);
  if (!e) throw InputError("[" + name_ + "] is missing '" + key + "'", section_ ? section_->line : 0);
  return parse_number(e->value, e->line);
}

double SectionReader::number_or(const std::string& key, double fallback) const {
  const auto* e = find(key);
  return e ? parse_number(e->value, e->line) : fallback;
}

int SectionReader::integer_or(const std::string& key, int fallback) const {
  const auto* e = find(key);
  return e ? parse_integer(e->value, e->line) : fallback;
}

std::string SectionReader::text(const std::string& key) const {
  const auto* e = find(key);
  if (!e) throw InputError("[" + name_ + "] is missing '" + key + "'", section_ ? section_->line : 0);
  return e->value;
}

std::string SectionReader::text_or(const std::string& key, const std::string& fallback) const {
  const auto* e = find(key);
  return e ? e->value : fallback;
}

bool SectionReader::flag_or(const std::string& key, bool fallback) const {
  const auto* e = find(key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
  if (e->value == "false" || e->value == "no" || e->value == "0") return false;
  throw InputError("'" + e->value + "' is not a boolean", e->line);
}

std::filesystem::path SectionReader::path(const std::string& key) const {
  std::filesystem::path p = text(key);
  return p.is_absolute() ? p : file_.directory() / p;
}

void SectionReader::finish() const {
  if (!section_) return;
  for (const auto& e : section_->entries) {
    if (!used_.count(e.key)) throw InputError("[" + name_ + "] unknown key '" + e.key + "'", e.line);
  }
}

}  // namespace deepsoh::io
