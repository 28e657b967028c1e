#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pstar/report.hpp"

namespace {

using pstar::Json;

int write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << "\n";
    return 1;
  }
  f << text;
  return 0;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-scale partial *-algebra and unbounded C*-seminorm toolkit"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "build a named instance");
  std::string bname, bout, bweights, bblocks, blambdas;
  int bk = 3, bd = 4, bm = 5, bdepth = 5;
  bool bemit = false;
  build->add_option("name", bname, "instance name")->required();
  build->add_option("--k", bk, "sector dimension (weighted_diagonal)");
  build->add_option("--d", bd, "matrix dimension (compact_operator, quasi_star)");
  build->add_option("--m", bm, "Hermite cutoff (hermite_number)");
  build->add_option("--depth", bdepth, "tower depth");
  build->add_option("--weights", bweights, "weight generator, e.g. geometric:2");
  build->add_option("--blocks", bblocks, "comma-separated block dims (cq_spectral)");
  build->add_option("--lambdas", blambdas, "comma-separated weights (cq_spectral)");
  build->add_option("--out", bout, "output file (default stdout)");
  build->add_flag("--emit", bemit, "write to <name>.json in the working directory");

  // audit
  auto* audit = app.add_subcommand("audit", "run the full audit pipeline");
  std::vector<std::string> afiles;
  std::string aout;
  double atol = -1.0;
  int ajobs = 0;
  bool ants = false;
  audit->add_option("files", afiles, "instance files")->required();
  audit->add_option("--out", aout, "output file (default stdout)");
  audit->add_option("--tol", atol, "tolerance override");
  audit->add_option("--jobs", ajobs, "parallel audits across files");
  audit->add_flag("--no-timestamp", ants, "omit the timestamp field");

  // reverse
  auto* reverse = app.add_subcommand("reverse", "run the tower pipeline");
  std::string rfile, rout;
  double rtol = -1.0;
  bool rnts = false;
  reverse->add_option("file", rfile, "instance file with a tower")->required();
  reverse->add_option("--out", rout, "output file (default stdout)");
  reverse->add_option("--tol", rtol, "tolerance override");
  reverse->add_flag("--no-timestamp", rnts, "omit the timestamp field");

  auto* list = app.add_subcommand("list-instances", "list builders and fixtures");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      Json params = Json::object();
      if (build->count("--k")) params["k"] = bk;
      if (build->count("--d")) params["d"] = bd;
      if (build->count("--m")) params["m"] = bm;
      if (build->count("--depth")) params["depth"] = bdepth;
      if (build->count("--weights")) params["weights"] = bweights;
      if (build->count("--blocks")) params["blocks"] = parse_int_list(bblocks);
      if (build->count("--lambdas"))
        params["lambdas"] = parse_double_list(blambdas);
      pstar::Instance inst;
      try {
        inst = pstar::build_instance(bname, params);
      } catch (const pstar::MalformedInputError& e) {
        std::cerr << "build: " << e.what() << "\n";
        return 2;
      }
      std::string text = pstar::write_instance(inst);
      if (bemit && bout.empty()) bout = bname + ".json";
      return write_output(text, bout);
    }

    if (audit->parsed()) {
      pstar::AuditOptions opts;
      opts.tol_override = atol;
      opts.with_timestamp = !ants;
      std::vector<pstar::Instance> instances(afiles.size());
      for (size_t i = 0; i < afiles.size(); ++i) {
        try {
          instances[i] = pstar::read_instance_file(afiles[i]);
        } catch (const pstar::MalformedInputError& e) {
          std::cerr << "audit: " << e.what() << "\n";
          return 2;
        }
      }
#ifdef _OPENMP
      if (ajobs > 0) omp_set_num_threads(ajobs);
#endif
      std::vector<Json> reports(instances.size());
      // Audits across files are independent; each one is self-contained.
      bool failed = false;
#pragma omp parallel for schedule(dynamic) if (afiles.size() > 1 && ajobs != 1)
      for (size_t i = 0; i < instances.size(); ++i) {
        try {
          reports[i] = pstar::run_audit(instances[i], opts);
        } catch (const std::exception& e) {
#pragma omp critical
          {
            std::cerr << "audit " << afiles[i] << ": " << e.what() << "\n";
            failed = true;
          }
        }
      }
      if (failed) return 1;
      std::string text = reports.size() == 1
                             ? reports[0].dump(2) + "\n"
                             : Json(reports).dump(2) + "\n";
      return write_output(text, aout);
    }

    if (reverse->parsed()) {
      pstar::AuditOptions opts;
      opts.tol_override = rtol;
      opts.with_timestamp = !rnts;
      pstar::Instance inst;
      try {
        inst = pstar::read_instance_file(rfile);
      } catch (const pstar::MalformedInputError& e) {
        std::cerr << "reverse: " << e.what() << "\n";
        return 2;
      }
      if (!inst.tower) {
        std::cerr << "reverse: tower required\n";
        return 2;
      }
      Json out = pstar::run_reverse(inst, opts);
      return write_output(out.dump(2) + "\n", rout);
    }

    if (list->parsed()) {
      for (const auto& [name, params] : pstar::instance_catalog())
        std::cout << name << "  " << params << "\n";
      return 0;
    }
  } catch (const pstar::MalformedInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
