#include "qdich/state_io.hpp"

#include <fstream>

#include <json.hpp>

namespace qdich {

namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  json re = json::array(), im = json::array();
  bool has_im = false;
  for (int i = 0; i < d; ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < static_cast<int>(m.cols()); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
      if (m(i, j).imag() != 0.0) has_im = true;
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  json out{{"dim", d}, {"re", std::move(re)}};
  if (has_im) out["im"] = std::move(im);
  return out;
}

Matrix matrix_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("re")) {
    throw InvalidInputError("state file: missing \"dim\" or \"re\"");
  }
  const int d = j.at("dim").get<int>();
  if (d < 1) throw InvalidInputError("state file: dim must be positive");
  const auto& re = j.at("re");
  const bool has_im = j.contains("im");
  if (static_cast<int>(re.size()) != d) throw InvalidInputError("state file: re row count != dim");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(re.at(i).size()) != d) {
      throw InvalidInputError("state file: re column count != dim");
    }
    for (int k = 0; k < d; ++k) {
      double imv = 0.0;
      if (has_im) imv = j.at("im").at(i).at(k).get<double>();
      m(i, k) = Complex(re.at(i).at(k).get<double>(), imv);
    }
  }
  return m;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace

Matrix load_matrix(const std::string& path) { return matrix_from_json(read_file(path)); }

HermitianOperator load_hermitian(const std::string& path) {
  return HermitianOperator(load_matrix(path));
}

DensityOperator load_density(const std::string& path) { return DensityOperator(load_matrix(path)); }

void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out << matrix_json(m).dump(1) << "\n";
}

std::string matrix_to_json(const Matrix& m) { return matrix_json(m).dump(1); }

void save_choi(const std::string& path, const ChoiChannel& ch) {
  json j = matrix_json(ch.choi().entries());
  j["dim_in"] = ch.dim_in();
  j["dim_out"] = ch.dim_out();
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out << j.dump(1) << "\n";
}

ChoiChannel load_choi(const std::string& path) {
  const json j = read_file(path);
  if (!j.contains("dim_in") || !j.contains("dim_out")) {
    throw InvalidInputError("choi file: missing dim_in/dim_out");
  }
  return ChoiChannel(j.at("dim_in").get<int>(), j.at("dim_out").get<int>(),
                     HermitianOperator(matrix_from_json(j)));
}

}  // namespace qdich
