#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "rdmkit/errors.hpp"

namespace rdmkit {

inline constexpr const char* kSchemaVersion = "1";

/// Real array with an explicit shape; data in row-major order.
struct ArrayValue {
  std::vector<long> shape;
  std::vector<double> data;
};

using Value = std::variant<std::string, long, double, bool, ArrayValue>;

/// Ordered typed key/value store behind every file the tool reads or
/// writes. The text form is line oriented:
///
///   rdmkit 1
///   str  <key> <value to end of line>
///   int  <key> <integer>
///   real <key> <decimal, 17 significant digits>
///   bool <key> true|false
///   array <key> <ndim> <d1> ... <dk>
///   <d1*...*dk whitespace-separated reals>
///
/// Blank lines and lines starting with '#' are ignored. Reals use 17
/// significant digits so every finite double round-trips bit-exactly.
class Document {
 public:
  void put_string(const std::string& key, std::string value);
  void put_int(const std::string& key, long value);
  void put_real(const std::string& key, double value);
  void put_bool(const std::string& key, bool value);
  void put_array(const std::string& key, std::vector<long> shape, std::vector<double> data);

  bool has(const std::string& key) const;
  const std::string& get_string(const std::string& key) const;
  long get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  const ArrayValue& get_array(const std::string& key) const;

  void write(std::ostream& os) const;
  static Document read(std::istream& is);

 private:
  const Value& find(const std::string& key, const char* type_name) const;
  void insert(const std::string& key, Value value);

  std::vector<std::pair<std::string, Value>> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

Document read_document_file(const std::string& path);
void write_document_file(const std::string& path, const Document& doc);

/// Decimal form with 17 significant digits (lossless for doubles).
std::string format_real(double value);

}  // namespace rdmkit
