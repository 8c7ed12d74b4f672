#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bsv/bsv.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bsv::Error("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_presets() {
  for (const auto& p : bsv::presets()) {
    std::cout << p.name;
    if (p.n_min) std::cout << " (--n " << p.n_min << ".." << p.n_max << ")";
    std::cout << ": " << p.summary << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernstein-Sato polynomials of local cohomology modules: exact verification and certificates"};
  std::string command;
  std::string target;
  bool json = false;
  bool no_timestamp = false;
  bool emit = false;
  bool list = false;
  std::optional<int> pole_cap, dop_cap, n;
  std::optional<long> coeff_cap;

  app.add_option("command", command, "verify, certify, search, grade, combine, kashiwara, jump, all or preset")
      ->required();
  app.add_option("file", target, "scenario file (preset name for the preset command)");
  app.add_flag("--json", json, "print the JSON report instead of text");
  app.add_option("--pole-cap", pole_cap, "maximum pole order in certificate columns");
  app.add_option("--dop-cap", dop_cap, "maximum differential order in certificate columns");
  app.add_option("--coeff-deg-cap", coeff_cap, "maximum weighted degree of column coefficients");
  app.add_flag("--no-timestamp", no_timestamp, "omit timestamp and timing so reports are byte-stable");
  app.add_option("--n", n, "size parameter for presets that take one");
  app.add_flag("--emit", emit, "preset: print the scenario text instead of running it");
  app.add_flag("--list", list, "preset: list the available presets");
  CLI11_PARSE(app, argc, argv);

  bsv::RunOptions opt;
  opt.caps.pole = pole_cap;
  opt.caps.dop = dop_cap;
  opt.caps.coeff_deg = coeff_cap;
  opt.timestamp = !no_timestamp;

  std::string text;
  std::string run_command = command;
  try {
    if (command == "preset") {
      if (list) {
        print_presets();
        return bsv::exit_ok;
      }
      if (target.empty()) throw bsv::Error("preset needs a name (see bsv preset --list)");
      text = bsv::preset_text(target, n);
      if (emit) {
        std::cout << text;
        return bsv::exit_ok;
      }
      run_command = "all";
    } else {
      if (target.empty()) throw bsv::Error(command + " needs a scenario file");
      if (n || emit || list) throw bsv::Error("--n, --emit and --list only apply to the preset command");
      text = read_file(target);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bsv::exit_error;
  }

  bsv::Report rep = bsv::run(run_command, text, opt);
  if (command == "preset") rep.json["command"] = "preset";
  if (json) {
    std::cout << rep.json.dump(2) << "\n";
  } else {
    std::cout << rep.text;
  }
  return rep.exit_code;
}
