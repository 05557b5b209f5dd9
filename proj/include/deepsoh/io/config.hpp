#pragma once

#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <vector>

namespace deepsoh::io {

/// Shared structured-text format of every input file:
///
///   # comment
///   [section]
///   key = value        # trailing comments allowed
///
/// Keys may repeat inside a section (protocol steps rely on this); order is
/// kept. Every entry remembers its line for diagnostics.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;
};

class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in, std::filesystem::path directory = {});
  static ConfigFile load(const std::filesystem::path& path);

  /// nullptr when the section is absent.
  const ConfigSection* section(const std::string& name) const;
  const std::vector<ConfigSection>& sections() const { return sections_; }
  /// Directory relative paths in values are resolved against.
  const std::filesystem::path& directory() const { return directory_; }

 private:
  std::vector<ConfigSection> sections_;
  std::filesystem::path directory_;
};

/// Locale-independent number parsing; InputError carries the line.
double parse_number(const std::string& text, int line);
int parse_integer(const std::string& text, int line);

/// Typed access to one section. finish() rejects keys nobody asked for, which
/// catches typos in parameter names.
class SectionReader {
 public:
  SectionReader(const ConfigFile& file, const std::string& name, bool required = true);

  bool present() const { return section_ != nullptr; }
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer_or(const std::string& key, int fallback) const;
  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;
  std::filesystem::path path(const std::string& key) const;
  const ConfigEntry* find(const std::string& key) const;
  void finish() const;

 private:
  const ConfigFile& file_;
  std::string name_;
  const ConfigSection* section_;
  mutable std::set<std::string> used_;
};

}  // namespace deepsoh::io
