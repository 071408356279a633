#pragma once

#include <stdexcept>
#include <string>

namespace fisheco {

// Machine-readable category for every failure the library can raise.
enum class Errc {
  usage,
  not_found,
  merge_conflict,
  invalid_schema,
  invalid_id,
  duplicate_id,
  unknown_type,
  unknown_attribute,
  attribute_kind_mismatch,
  unknown_entity,
  unknown_relation,
  guard_violation,
  duplicate_relation,
  tense_date_conflict,
  malformed_document,
  schema_mismatch,
  unknown_fixture,
  invalid_pattern,
  bad_params,
  io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace fisheco
