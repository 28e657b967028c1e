#include "pstar/io.hpp"

#include <fstream>

namespace pstar {

namespace {

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw MalformedInputError("complex values are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json tensor_to_json(const SparseTensor& t) {
  const long dense_size = long(t.left_dim) * t.right_dim * t.target_dim;
  if (dense_size <= 1000 && t.density() > 0.25) {
    Json dense = Json::array();
    std::vector<std::vector<std::vector<Complex>>> buf(
        t.left_dim, std::vector<std::vector<Complex>>(
                        t.right_dim, std::vector<Complex>(t.target_dim, 0.0)));
    for (const auto& e : t.entries) buf[e.i][e.j][e.k] += e.v;
    for (int i = 0; i < t.left_dim; ++i) {
      Json plane = Json::array();
      for (int j = 0; j < t.right_dim; ++j) {
        Json row = Json::array();
        for (int k = 0; k < t.target_dim; ++k)
          row.push_back(complex_to_json(buf[i][j][k]));
        plane.push_back(row);
      }
      dense.push_back(plane);
    }
    return Json{{"tensor", dense}};
  }
  Json rows = Json::array();
  for (const auto& e : t.entries)
    rows.push_back(Json::array({e.i, e.j, e.k, e.v.real(), e.v.imag()}));
  return Json{{"tensor_sparse", rows}};
}

SparseTensor tensor_from_json(const Json& entry, int li, int ri, int ti) {
  SparseTensor t;
  t.left_dim = li;
  t.right_dim = ri;
  t.target_dim = ti;
  if (entry.contains("tensor_sparse")) {
    for (const Json& row : entry.at("tensor_sparse")) {
      if (!row.is_array() || row.size() != 5)
        throw MalformedInputError("sparse tensor rows are [i,j,k,re,im]");
      t.entries.push_back({row[0].get<int>(), row[1].get<int>(),
                           row[2].get<int>(),
                           Complex(row[3].get<double>(), row[4].get<double>())});
    }
  } else if (entry.contains("tensor")) {
    const Json& dense = entry.at("tensor");
    for (int i = 0; i < li; ++i)
      for (int j = 0; j < ri; ++j)
        for (int k = 0; k < ti; ++k) {
          Complex v = complex_from_json(dense.at(i).at(j).at(k));
          if (v != Complex(0, 0)) t.entries.push_back({i, j, k, v});
        }
  } else {
    throw MalformedInputError("table entry lacks tensor data");
  }
  t.sort_entries();
  return t;
}

bool is_identity(const Matrix& m) {
  return (m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(j.at(i).at(c));
  return m;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["schema_version"] = 1;
  j["name"] = inst.name;
  j["params"] = inst.params;
  j["tolerance"] = inst.tol;
  if (!inst.metadata.empty()) j["metadata"] = inst.metadata;
  if (!inst.expected.empty()) j["expected"] = inst.expected;

  Json alg;
  alg["sectors"] = Json::array();
  for (const Sector& s : inst.algebra.sectors())
    alg["sectors"].push_back(
        Json{{"id", s.id}, {"dim", s.dim}, {"star_id", s.star_id}});
  Json star = Json::object();
  for (const Sector& s : inst.algebra.sectors()) {
    Matrix m = inst.algebra.star_matrix(s.id);
    if (!is_identity(m)) star[s.id] = matrix_to_json(m);
  }
  if (!star.empty()) alg["star_maps"] = star;
  if (inst.algebra.unit()) {
    Json u = Json::object();
    for (const auto& [s, v] : inst.algebra.unit()->comps)
      u[s] = vector_to_json(v);
    alg["unit"] = u;
  }
  Json table = Json::array();
  for (const auto& [key, entry] : inst.algebra.table()) {
    Json e{{"left", key.first}, {"right", key.second}, {"target", entry.target}};
    e.update(tensor_to_json(entry.tensor));
    table.push_back(e);
  }
  alg["table"] = table;
  j["algebra"] = alg;

  Json sem;
  sem["mode"] = inst.seminorm.mode == WitnessedSeminorm::Mode::Witnessed
                    ? "witnessed"
                    : "raw";
  sem["domain"] = inst.seminorm.domain;
  if (inst.seminorm.mode == WitnessedSeminorm::Mode::Witnessed) {
    sem["witness_dim"] = inst.seminorm.witness_dim;
    Json w = Json::object();
    for (const auto& [s, mats] : inst.seminorm.witness) {
      Json lst = Json::array();
      for (const Matrix& m : mats) lst.push_back(matrix_to_json(m));
      w[s] = lst;
    }
    sem["witness"] = w;
  } else {
    sem["raw_eval"] = inst.seminorm.raw_name;
  }
  j["seminorm"] = sem;

  if (inst.alt_pi) {
    Json ap{{"dim", inst.alt_pi->dim}};
    Json mats = Json::object();
    for (const auto& [s, lst] : inst.alt_pi->matrices) {
      Json arr = Json::array();
      for (const Matrix& m : lst) arr.push_back(matrix_to_json(m));
      mats[s] = arr;
    }
    ap["matrices"] = mats;
    j["alt_pi"] = ap;
  }

  if (inst.tower) {
    Json tw{{"builder", inst.tower->builder},
            {"depth", inst.tower->depth},
            {"params", inst.tower->params}};
    Json db = Json::object();
    for (const auto& [s, b] : inst.tower->declared_bounded) db[s] = b;
    tw["declared_bounded"] = db;
    j["tower"] = tw;
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1)
    throw MalformedInputError("unsupported or missing schema_version");
  Instance inst;
  inst.name = j.at("name").get<std::string>();
  if (j.contains("params")) inst.params = j.at("params");
  if (j.contains("tolerance")) inst.tol = j.at("tolerance").get<double>();
  if (j.contains("metadata")) inst.metadata = j.at("metadata");
  if (j.contains("expected")) inst.expected = j.at("expected");

  const Json& alg = j.at("algebra");
  std::vector<Sector> sectors;
  for (const Json& s : alg.at("sectors"))
    sectors.push_back(Sector{s.at("id").get<std::string>(),
                             s.at("dim").get<int>(),
                             s.at("star_id").get<std::string>()});
  auto dim_of = [&](const std::string& id) {
    for (const Sector& s : sectors)
      if (s.id == id) return s.dim;
    throw MalformedInputError("table references unknown sector " + id);
  };
  std::map<std::pair<std::string, std::string>, TableEntry> table;
  for (const Json& e : alg.at("table")) {
    std::string l = e.at("left").get<std::string>();
    std::string r = e.at("right").get<std::string>();
    std::string tgt = e.at("target").get<std::string>();
    table[{l, r}] = {tgt, tensor_from_json(e, dim_of(l), dim_of(r), dim_of(tgt))};
  }
  std::map<std::string, Matrix> star_maps;
  if (alg.contains("star_maps"))
    for (auto it = alg.at("star_maps").begin(); it != alg.at("star_maps").end();
         ++it)
      star_maps[it.key()] = matrix_from_json(it.value());
  std::optional<Element> unit;
  if (alg.contains("unit")) {
    Element u;
    for (auto it = alg.at("unit").begin(); it != alg.at("unit").end(); ++it)
      u.comps[it.key()] = vector_from_json(it.value());
    unit = u;
  }
  inst.algebra = PartialStarAlgebra(sectors, table, star_maps, unit, inst.tol);

  const Json& sem = j.at("seminorm");
  WitnessedSeminorm p;
  const std::string mode = sem.at("mode").get<std::string>();
  p.domain = sem.at("domain").get<std::vector<std::string>>();
  if (mode == "witnessed") {
    p.mode = WitnessedSeminorm::Mode::Witnessed;
    p.witness_dim = sem.at("witness_dim").get<int>();
    for (auto it = sem.at("witness").begin(); it != sem.at("witness").end();
         ++it) {
      std::vector<Matrix> mats;
      for (const Json& m : it.value()) mats.push_back(matrix_from_json(m));
      p.witness[it.key()] = std::move(mats);
    }
  } else if (mode == "raw") {
    p.mode = WitnessedSeminorm::Mode::Raw;
    p.raw_name = sem.at("raw_eval").get<std::string>();
    p.raw_eval = raw_evaluator(p.raw_name);
  } else {
    throw MalformedInputError("seminorm mode must be witnessed or raw");
  }
  inst.seminorm = std::move(p);

  if (j.contains("alt_pi")) {
    Instance::AltPi ap;
    ap.dim = j.at("alt_pi").at("dim").get<int>();
    const Json& mats = j.at("alt_pi").at("matrices");
    for (auto it = mats.begin(); it != mats.end(); ++it) {
      std::vector<Matrix> lst;
      for (const Json& m : it.value()) lst.push_back(matrix_from_json(m));
      ap.matrices[it.key()] = std::move(lst);
    }
    inst.alt_pi = std::move(ap);
  }

  if (j.contains("tower")) {
    TowerSpec tw;
    tw.builder = j.at("tower").at("builder").get<std::string>();
    tw.depth = j.at("tower").at("depth").get<int>();
    tw.params = j.at("tower").at("params");
    if (j.at("tower").contains("declared_bounded"))
      for (auto it = j.at("tower").at("declared_bounded").begin();
           it != j.at("tower").at("declared_bounded").end(); ++it)
        tw.declared_bounded[it.key()] = it.value().get<bool>();
    inst.tower = std::move(tw);
  }
  return inst;
}

std::string write_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError("cannot open instance file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw MalformedInputError("instance file is not valid JSON: " +
                              std::string(e.what()));
  }
  try {
    return instance_from_json(j);
  } catch (const Json::exception& e) {
    throw MalformedInputError("instance file is malformed: " +
                              std::string(e.what()));
  }
}

void write_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file: " + path);
  out << write_instance(inst);
}

}  // namespace pstar
