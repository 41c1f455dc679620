#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "depth2/io.hpp"

using nlohmann::json;

namespace {

void print_text(const json& j, std::ostream& out, int indent = 0) {
  const std::string pad(indent, ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << pad << key << ":\n";
      print_text(value, out, indent + 2);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << pad << key << ":\n";
      for (const auto& item : value) {
        out << pad << "  -";
        for (const auto& [k, v] : item.items()) out << ' ' << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
        out << '\n';
      }
    } else {
      out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depth two extensions, their bialgebroids and Galois audits"};
  std::string command, input, field_text, output;
  bool as_json = false;
  const std::vector<std::string> commands{"analyze", "d2", "bialgebroid", "galois", "audit", "gen-example"};
  app.add_option("command,--command", command, "analyze | d2 | bialgebroid | galois | audit | gen-example")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("input,--input", input, "extension JSON file, or the example name for gen-example")
      ->required();
  app.add_option("--field", field_text, "reinterpret the input over Q or Fp:p");
  app.add_option("-o,--output", output, "write the report to a file");
  app.add_flag("--json", as_json, "JSON output");
  app.footer("examples: " + [] {
    std::string s;
    for (const auto& n : depth2::catalog_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  json report;
  int code = 0;
  try {
    std::optional<depth2::Field> field;
    if (!field_text.empty()) field = depth2::parse_field(field_text);
    if (command == "gen-example") {
      auto spec = depth2::gen_example(input);
      if (field) spec = spec.over(*field);
      report = depth2::extension_to_json(spec);
      as_json = true;
    } else {
      const auto spec = depth2::read_extension(input, field);
      const auto ext = spec.extension();
      if (command == "analyze") {
        report = depth2::analyze_report(spec);
      } else if (command == "d2") {
        report = depth2::d2_report(ext);
      } else if (command == "bialgebroid") {
        report = depth2::bialgebroid_report(ext);
        if (report["built"] == true && report["all_pass"] == false) code = 2;
      } else {
        report = command == "galois" ? depth2::galois_report(ext) : depth2::audit_report(ext);
        if (report["main_theorem_consistent"] == false || report["corollary_consistent"] == false) code = 2;
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      std::cerr << "cannot write " << output << '\n';
      return 1;
    }
  }
  std::ostream& out = output.empty() ? std::cout : file;
  if (as_json) out << report.dump(2) << '\n';
  else print_text(report, out);
  if (code == 2) std::cerr << "FAILURE: the two sides of the equivalence disagree\n";
  return code;
}
