#include "rdmkit/serialize.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rdmkit {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void Document::insert(const std::string& key, Value value) {
  if (index_.contains(key)) {
    throw Error(ErrorCode::ParseError, "duplicate key '" + key + "'");
  }
  index_.emplace(key, items_.size());
  items_.emplace_back(key, std::move(value));
}

void Document::put_string(const std::string& key, std::string value) {
  insert(key, Value(std::move(value)));
}
void Document::put_int(const std::string& key, long value) { insert(key, Value(value)); }
void Document::put_real(const std::string& key, double value) { insert(key, Value(value)); }
void Document::put_bool(const std::string& key, bool value) { insert(key, Value(value)); }
void Document::put_array(const std::string& key, std::vector<long> shape,
                         std::vector<double> data) {
  long count = 1;
  for (long d : shape) count *= d;
  if (count != static_cast<long>(data.size())) {
    throw Error(ErrorCode::InvalidArgument, "array data does not match its shape");
  }
  insert(key, Value(ArrayValue{std::move(shape), std::move(data)}));
}

bool Document::has(const std::string& key) const { return index_.contains(key); }

const Value& Document::find(const std::string& key, const char* type_name) const {
  auto it = index_.find(key);
  if (it == index_.end()) {
    throw Error(ErrorCode::ParseError,
                std::string("missing ") + type_name + " field '" + key + "'");
  }
  return items_[it->second].second;
}

const std::string& Document::get_string(const std::string& key) const {
  const Value& v = find(key, "string");
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw Error(ErrorCode::ParseError, "field '" + key + "' is not a string");
}

long Document::get_int(const std::string& key) const {
  const Value& v = find(key, "integer");
  if (const auto* s = std::get_if<long>(&v)) return *s;
  throw Error(ErrorCode::ParseError, "field '" + key + "' is not an integer");
}

double Document::get_real(const std::string& key) const {
  const Value& v = find(key, "real");
  if (const auto* s = std::get_if<double>(&v)) return *s;
  throw Error(ErrorCode::ParseError, "field '" + key + "' is not a real");
}

bool Document::get_bool(const std::string& key) const {
  const Value& v = find(key, "bool");
  if (const auto* s = std::get_if<bool>(&v)) return *s;
  throw Error(ErrorCode::ParseError, "field '" + key + "' is not a bool");
}

const ArrayValue& Document::get_array(const std::string& key) const {
  const Value& v = find(key, "array");
  if (const auto* s = std::get_if<ArrayValue>(&v)) return *s;
  throw Error(ErrorCode::ParseError, "field '" + key + "' is not an array");
}

void Document::write(std::ostream& os) const {
  os << "rdmkit " << kSchemaVersion << "\n";
  for (const auto& [key, value] : items_) {
    if (const auto* s = std::get_if<std::string>(&value)) {
      os << "str " << key << " " << *s << "\n";
    } else if (const auto* i = std::get_if<long>(&value)) {
      os << "int " << key << " " << *i << "\n";
    } else if (const auto* r = std::get_if<double>(&value)) {
      os << "real " << key << " " << format_real(*r) << "\n";
    } else if (const auto* b = std::get_if<bool>(&value)) {
      os << "bool " << key << " " << (*b ? "true" : "false") << "\n";
    } else if (const auto* a = std::get_if<ArrayValue>(&value)) {
      os << "array " << key << " " << a->shape.size();
      for (long d : a->shape) os << " " << d;
      os << "\n";
      // 2-D arrays one row per line; anything else 8 values per line.
      const long per_line =
          a->shape.size() == 2 && a->shape[1] > 0 ? a->shape[1] : 8;
      for (std::size_t n = 0; n < a->data.size(); ++n) {
        os << format_real(a->data[n]);
        os << ((n + 1) % per_line == 0 || n + 1 == a->data.size() ? "\n" : " ");
      }
    }
  }
}

namespace {

class Tokenizer {
 public:
  explicit Tokenizer(std::istream& is) : is_(is) {}

  // Next whitespace-separated token, skipping blank/comment lines.
  bool next(std::string& token) {
    for (;;) {
      if (pos_ >= line_.size()) {
        if (!std::getline(is_, line_)) return false;
        ++line_number_;
        pos_ = 0;
        continue;
      }
      while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
      if (pos_ >= line_.size()) continue;
      if (line_[pos_] == '#') {
        pos_ = line_.size();
        continue;
      }
      std::size_t end = pos_;
      while (end < line_.size() && !std::isspace(static_cast<unsigned char>(line_[end]))) ++end;
      token = line_.substr(pos_, end - pos_);
      pos_ = end;
      return true;
    }
  }

  // Remainder of the current line, left-trimmed (for string values).
  std::string rest_of_line() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    std::string rest = line_.substr(pos_);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.pop_back();
    pos_ = line_.size();
    return rest;
  }

  int line_number() const { return line_number_; }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << what << " (line " << line_number_ << ")";
    throw Error(ErrorCode::ParseError, os.str());
  }

 private:
  std::istream& is_;
  std::string line_;
  std::size_t pos_ = 0;
  int line_number_ = 0;
};

long parse_long(Tokenizer& tok, const std::string& text) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0') tok.fail("expected integer, got '" + text + "'");
  return v;
}

double parse_double(Tokenizer& tok, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') tok.fail("expected real, got '" + text + "'");
  return v;
}

}  // namespace

Document Document::read(std::istream& is) {
  Tokenizer tok(is);
  std::string word;
  if (!tok.next(word)) throw Error(ErrorCode::ParseError, "empty document");
  if (word != "rdmkit") {
    tok.fail("expected 'rdmkit' header, got '" + word + "'");
  }
  std::string version;
  if (!tok.next(version)) tok.fail("missing schema version");
  if (version != kSchemaVersion) {
    throw Error(ErrorCode::SchemaVersionMismatch,
                "schema version '" + version + "' is not supported (expected " +
                    kSchemaVersion + ")");
  }

  Document doc;
  while (tok.next(word)) {
    std::string key;
    if (!tok.next(key)) tok.fail("missing key after '" + word + "'");
    if (word == "str") {
      doc.put_string(key, tok.rest_of_line());
    } else if (word == "int") {
      std::string text;
      if (!tok.next(text)) tok.fail("missing value for '" + key + "'");
      doc.put_int(key, parse_long(tok, text));
    } else if (word == "real") {
      std::string text;
      if (!tok.next(text)) tok.fail("missing value for '" + key + "'");
      doc.put_real(key, parse_double(tok, text));
    } else if (word == "bool") {
      std::string text;
      if (!tok.next(text)) tok.fail("missing value for '" + key + "'");
      if (text == "true") {
        doc.put_bool(key, true);
      } else if (text == "false") {
        doc.put_bool(key, false);
      } else {
        tok.fail("expected true/false for '" + key + "'");
      }
    } else if (word == "array") {
      std::string text;
      if (!tok.next(text)) tok.fail("missing rank for array '" + key + "'");
      const long rank = parse_long(tok, text);
      if (rank < 1 || rank > 8) tok.fail("unreasonable array rank for '" + key + "'");
      std::vector<long> shape;
      long count = 1;
      for (long r = 0; r < rank; ++r) {
        if (!tok.next(text)) tok.fail("missing dimension for array '" + key + "'");
        const long d = parse_long(tok, text);
        if (d < 0) tok.fail("negative dimension for array '" + key + "'");
        shape.push_back(d);
        count *= d;
      }
      std::vector<double> data;
      data.reserve(count);
      for (long n = 0; n < count; ++n) {
        if (!tok.next(text)) tok.fail("unexpected end of data in array '" + key + "'");
        data.push_back(parse_double(tok, text));
      }
      doc.put_array(key, std::move(shape), std::move(data));
    } else {
      tok.fail("unknown directive '" + word + "'");
    }
  }
  return doc;
}

Document read_document_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "' for reading");
  }
  return Document::read(is);
}

void write_document_file(const std::string& path, const Document& doc) {
  std::ofstream os(path);
  if (!os) {
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "' for writing");
  }
  doc.write(os);
  if (!os) {
    throw Error(ErrorCode::ParseError, "failed writing '" + path + "'");
  }
}

}  // namespace rdmkit
