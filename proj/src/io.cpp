#include "symflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace symflow::io {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex entries must be two-element arrays [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json ket_to_json(const Ket& k, int d) {
  Json amplitudes = Json::array();
  for (Eigen::Index i = 0; i < k.size(); ++i) amplitudes.push_back(complex_to_json(k(i)));
  return Json{{"d", d}, {"dim", k.size()}, {"amplitudes", amplitudes}};
}

Ket ket_from_json(const Json& j) {
  const auto& amplitudes = j.at("amplitudes");
  Ket k(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i) k(static_cast<Eigen::Index>(i)) = complex_from_json(amplitudes[i]);
  return k;
}

Json matrix_to_json(const ComplexMatrix& m, int d) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"d", d}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const auto& entries = j.at("entries");
  const auto rows = static_cast<Eigen::Index>(j.at("rows").get<int>());
  const auto cols = static_cast<Eigen::Index>(j.at("cols").get<int>());
  if (entries.size() != static_cast<std::size_t>(rows)) {
    throw std::invalid_argument("matrix entries do not match the declared row count");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = entries[static_cast<std::size_t>(r)];
    if (row.size() != static_cast<std::size_t>(cols)) {
      throw std::invalid_argument("matrix entries do not match the declared column count");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

Json density_to_json(const states::DensityOperator& rho) {
  Json j = matrix_to_json(rho.matrix(), rho.d());
  j["trace"] = rho.trace();
  j["normalized"] = rho.normalized();
  if (rho.kind) j["kind"] = states::to_string(*rho.kind);
  if (rho.seed) j["seed"] = *rho.seed;
  return j;
}

Json classification_to_json(const states::ClassificationReport& report) {
  return Json{{"class", states::to_string(report.cls)},
              {"symmetricity", report.symmetricity},
              {"residuals",
               {{"state_symmetric", report.residual_state_symmetric},
                {"state_antisymmetric", report.residual_state_antisymmetric},
                {"operator_symmetric", report.residual_operator_symmetric}}}};
}

Json certificate_to_json(const cpcheck::Certificate& cert) {
  return Json{{"delta", cert.delta},
              {"m", cert.m},
              {"before_eigs", cert.before_eigs},
              {"after_eigs", cert.after_eigs},
              {"verdicts",
               {{"before_positive", cert.before_positive},
                {"after_positive", cert.after_positive},
                {"inequality_predicts_negative", cert.inequality_predicts_negative}}},
              {"formula_residuals",
               {{"before", cert.before_formula_residual},
                {"after", cert.after_formula_residual}}}};
}

std::string format_sci(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.11e", value);
  return buffer;
}

CsvWriter::CsvWriter(const std::string& path, const Json& resolved_config,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), n_columns_(columns.size()) {
  if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
  out_ << "# config: " << resolved_config.dump() << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
  }
  out_ << "\n";
}

void CsvWriter::write_row(const std::vector<double>& values) {
  if (values.size() != n_columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    out_ << format_sci(values[i]) << (i + 1 < values.size() ? "," : "");
  }
  out_ << "\n";
}

void CsvWriter::write_row_raw(const std::vector<std::string>& cells) {
  if (cells.size() != n_columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
  }
  out_ << "\n";
}

}  // namespace symflow::io
