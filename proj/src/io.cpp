#include "netwit/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace netwit {

using nlohmann::json;

namespace {

json complex_matrix_entries(const Matrix& m) {
  json entries = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      entries.push_back({m(r, c).real(), m(r, c).imag()});
  return entries;
}

Matrix matrix_from_entries(const json& entries, int side) {
  if (static_cast<int>(entries.size()) != side * side)
    throw std::runtime_error("entry count does not match dims");
  Matrix m(side, side);
  int i = 0;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2)
      throw std::runtime_error("entries must be [re, im] pairs");
    m(i / side, i % side) = Complex(e[0].get<double>(), e[1].get<double>());
    ++i;
  }
  return m;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace

std::string to_json(const DensityMatrix& m) {
  json j;
  j["dims"] = m.dims();
  j["entries"] = complex_matrix_entries(m.matrix());
  return j.dump();
}

DensityMatrix density_matrix_from_json(const std::string& text,
                                       const Tolerances& tol) {
  const json j = parse(text);
  if (!j.contains("dims") || !j.contains("entries"))
    throw std::runtime_error("state JSON needs \"dims\" and \"entries\"");
  std::vector<int> dims = j["dims"].get<std::vector<int>>();
  const int side = total_dim(dims);
  return DensityMatrix(dims, matrix_from_entries(j["entries"], side), tol);
}

std::string to_json(const JointDistribution& p) {
  json j;
  j["cardinalities"] = p.cardinalities;
  j["probabilities"] = p.probabilities;
  return j.dump();
}

JointDistribution distribution_from_json(const std::string& text) {
  const json j = parse(text);
  JointDistribution p;
  p.cardinalities = j.at("cardinalities").get<std::vector<int>>();
  p.probabilities = j.at("probabilities").get<std::vector<double>>();
  p.validate();
  return p;
}

std::string to_json(const WitnessReport& r) {
  json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["violated"] = r.violated;
  j["margin"] = r.margin;
  j["tol"] = r.tol;
  return j.dump();
}

std::string to_json(const PostselectionScan& s) {
  json j;
  j["target"] = s.target;
  j["tol_p"] = s.tol_p;
  if (s.p_critical)
    j["p_critical"] = *s.p_critical;
  else
    j["p_critical"] = nullptr;
  j["samples"] = json::array();
  for (const auto& x : s.samples)
    j["samples"].push_back({{"p", x.p},
                            {"max_fidelity", x.max_fidelity},
                            {"status", to_string(x.status)}});
  return j.dump();
}

std::string to_json(const NetworkModel& m) {
  json j;
  j["hidden_dim"] = m.hidden_dim;
  j["weights"] = m.weights;
  j["branches"] = json::array();
  for (const auto& br : m.branches) {
    json b;
    b["src_ab"] = json::parse(to_json(br.src_ab));
    b["src_bc"] = json::parse(to_json(br.src_bc));
    b["src_ca"] = json::parse(to_json(br.src_ca));
    b["choi"] = json::array();
    for (const auto& c : br.choi)
      b["choi"].push_back(complex_matrix_entries(c));
    j["branches"].push_back(std::move(b));
  }
  return j.dump();
}

NetworkModel network_model_from_json(const std::string& text) {
  const json j = parse(text);
  NetworkModel m;
  m.hidden_dim = j.at("hidden_dim").get<int>();
  m.weights = j.at("weights").get<std::vector<double>>();
  const int side = 2 * m.hidden_dim * m.hidden_dim;
  for (const auto& b : j.at("branches")) {
    NetworkBranch br{density_matrix_from_json(b.at("src_ab").dump()),
                     density_matrix_from_json(b.at("src_bc").dump()),
                     density_matrix_from_json(b.at("src_ca").dump()),
                     {}};
    int i = 0;
    for (const auto& c : b.at("choi"))
      br.choi[i++] = matrix_from_entries(c, side);
    m.branches.push_back(std::move(br));
  }
  m.validate();
  return m;
}

std::string to_json(const SdpProblem& p) {
  json j;
  j["format"] = "netwit-sdp-v1";
  j["sense"] = (p.sense == Sense::maximize) ? "maximize" : "minimize";
  j["blocks"] = json::array();
  for (const auto& b : p.blocks)
    j["blocks"].push_back({{"name", b.name}, {"side", b.side}});
  auto terms_json = [](const std::vector<LinearTerm>& ts) {
    json arr = json::array();
    for (const auto& t : ts)
      arr.push_back({t.block, t.row, t.col, t.re_coeff, t.im_coeff});
    return arr;
  };
  j["objective"] = terms_json(p.objective);
  j["eq_constraints"] = json::array();
  for (const auto& eq : p.eq_constraints)
    j["eq_constraints"].push_back(
        {{"terms", terms_json(eq.terms)}, {"rhs", eq.rhs}});
  return j.dump();
}

ProductMeasurement measurement_from_json(const std::string& text,
                                         const Tolerances& tol) {
  const json j = parse(text);
  ProductMeasurement meas;
  for (const auto& party : j.at("parties")) {
    std::vector<HermitianOperator> povm;
    for (const auto& e : party.at("effects")) {
      std::vector<int> dims = e.at("dims").get<std::vector<int>>();
      const int side = total_dim(dims);
      povm.emplace_back(dims, matrix_from_entries(e.at("entries"), side),
                        Tolerances{.herm = tol.herm});
    }
    meas.povms.push_back(std::move(povm));
  }
  meas.validate(tol);
  return meas;
}

Vector state_vector_from_json(const std::string& text) {
  const json j = parse(text);
  const auto& entries = j.at("entries");
  Vector v(entries.size());
  int i = 0;
  for (const auto& e : entries)
    v(i++) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
  const double n = v.norm();
  if (n < 1e-12) throw std::runtime_error("zero target vector");
  return v / n;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

}  // namespace netwit
