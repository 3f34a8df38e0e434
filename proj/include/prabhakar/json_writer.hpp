#ifndef PRABHAKAR_JSON_WRITER_HPP_
#define PRABHAKAR_JSON_WRITER_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace prabhakar::io {

// Minimal streaming JSON emitter with byte-deterministic output: fields in
// insertion order, doubles printed with %.17g, non-finite values as null.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const std::vector<double>& v);

  const std::string& str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<bool> needs_comma_;
  bool after_key_ = false;
};

std::string format_double(double v);

}  // namespace prabhakar::io

#endif  // PRABHAKAR_JSON_WRITER_HPP_
