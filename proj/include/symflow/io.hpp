#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "symflow/cpcheck.hpp"
#include "symflow/states.hpp"
#include "symflow/types.hpp"

namespace symflow::io {

using Json = nlohmann::json;

/// Complex scalars serialize as [re, im]; matrices as row-major nested arrays;
/// a top-level "d" records the one-particle dimension.
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json ket_to_json(const Ket& k, int d);
Ket ket_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m, int d);
ComplexMatrix matrix_from_json(const Json& j);

Json density_to_json(const states::DensityOperator& rho);
Json classification_to_json(const states::ClassificationReport& report);
Json certificate_to_json(const cpcheck::Certificate& cert);

/// 12-significant-digit scientific notation used by every CSV column.
std::string format_sci(double value);

/// CSV with a one-line provenance header (the resolved config as a JSON
/// comment), a header row, and LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const Json& resolved_config,
            const std::vector<std::string>& columns);

  void write_row(const std::vector<double>& values);
  /// For columns that are verdicts/counters rather than measurements.
  void write_row_raw(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t n_columns_;
};

}  // namespace symflow::io
