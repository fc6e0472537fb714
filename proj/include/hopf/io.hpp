#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

// Flat-file plumbing: full-precision CSV with commented parameter headers,
// key=value config files, and a content hash so identical configurations
// are identifiable from the output alone.

namespace hopf::io {

// 17 significant digits, enough to round-trip any double
std::string format_g17(double x);

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}
    void comment(const std::string& line);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<double>& vals);

  private:
    std::ostream& os_;
};

// key=value per line; '#' starts a comment; blank lines ignored;
// whitespace around keys and values trimmed. Malformed lines throw.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::string& path);

// FNV-1a over the canonical "k=v\n" serialization, hex encoded
std::string config_hash(const std::map<std::string, std::string>& kv);

}  // namespace hopf::io
