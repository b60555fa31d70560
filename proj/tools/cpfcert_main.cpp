#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpfcert/cert_model.hpp"
#include "cpfcert/checkers.hpp"
#include "cpfcert/cpf_io.hpp"
#include "cpfcert/html_render.hpp"

namespace {

// Exit codes are pinned: 0 Certified, 1 Rejected, 2 PartiallyCertified,
// 3 Unsupported, 4 error. Across several files the worst outcome wins,
// where severity is error > Rejected > Unsupported > Partial > Certified
// (not the numeric code order).
int severity_rank(int exit_code) {
  switch (exit_code) {
    case 0: return 0;
    case 2: return 1;
    case 3: return 2;
    case 1: return 3;
    default: return 4;
  }
}

int exit_code_of(const cpfcert::Verdict& verdict) {
  switch (verdict.kind) {
    case cpfcert::VerdictKind::Certified: return 0;
    case cpfcert::VerdictKind::Rejected: return 1;
    case cpfcert::VerdictKind::PartiallyCertified: return 2;
    case cpfcert::VerdictKind::Unsupported: return 3;
  }
  return 4;
}

std::optional<std::string> read_file(const std::string& path, std::string* error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *error = "cannot open " + path;
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    *error = "cannot read " + path;
    return std::nullopt;
  }
  return buffer.str();
}

// Parses and structurally validates one file; diagnostics go to diag.
std::optional<cpfcert::CertificationProblem> load_certificate(const std::string& path,
                                                              std::string* diag) {
  std::string io_error;
  auto bytes = read_file(path, &io_error);
  if (!bytes) {
    *diag = io_error;
    return std::nullopt;
  }
  auto parsed = cpfcert::parse_certificate(*bytes);
  if (const cpfcert::CpfError* error = std::get_if<cpfcert::CpfError>(&parsed)) {
    *diag = error->to_string();
    return std::nullopt;
  }
  auto cp = std::get<cpfcert::CertificationProblem>(std::move(parsed));
  std::vector<cpfcert::StructuralDefect> defects = cpfcert::validate_structure(cp);
  if (!defects.empty()) {
    std::string message = "structural defects:";
    for (const auto& defect : defects) {
      message += "\n  " + defect.path + ": " + defect.description;
    }
    *diag = message;
    return std::nullopt;
  }
  return cp;
}

std::string verdict_text(const cpfcert::Verdict& verdict) {
  switch (verdict.kind) {
    case cpfcert::VerdictKind::Certified:
      return "CERTIFIED\n";
    case cpfcert::VerdictKind::Rejected:
      return "REJECTED at " + verdict.path.value_or("?") + ": " + verdict.reason.value_or("") +
             "\n";
    case cpfcert::VerdictKind::PartiallyCertified: {
      std::string out = "PARTIALLY CERTIFIED\n";
      for (const std::string& obligation : verdict.obligations) {
        out += "  obligation: " + obligation + "\n";
      }
      return out;
    }
    case cpfcert::VerdictKind::Unsupported:
      return "UNSUPPORTED: " + verdict.reason.value_or("") + "\n";
  }
  return "";
}

nlohmann::json verdict_json(const cpfcert::Verdict& verdict) {
  nlohmann::json j;
  j["verdict"] = cpfcert::to_string(verdict.kind);
  j["path"] = verdict.path ? nlohmann::json(*verdict.path) : nlohmann::json(nullptr);
  j["obligations"] = verdict.obligations;
  j["reason"] = verdict.reason ? nlohmann::json(*verdict.reason) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json error_json(const std::string& diag) {
  nlohmann::json j;
  j["verdict"] = "ERROR";
  j["path"] = nullptr;
  j["obligations"] = nlohmann::json::array();
  j["reason"] = diag;
  return j;
}

// First line of a multi-line diagnostic gets the file prefix; the
// continuation lines are already indented.
void print_diag(const std::string& file, bool prefix, const std::string& diag) {
  std::cerr << (prefix ? file + ": " : "") << diag << "\n";
}

std::string with_prefix(const std::string& file, bool prefix, const std::string& block) {
  if (!prefix) return block;
  std::string out;
  std::size_t start = 0;
  while (start < block.size()) {
    std::size_t end = block.find('\n', start);
    if (end == std::string::npos) end = block.size();
    out += file + ": " + block.substr(start, end - start) + "\n";
    start = end + 1;
  }
  return out;
}

struct Options {
  std::vector<std::string> files;
  std::string format = "text";
  std::uint64_t fuel = 10000;
  bool fuel_from_flag = false;
};

// CPFCERT_FUEL applies when --fuel is absent; a set but malformed
// variable is a hard error rather than a silent default.
bool resolve_fuel(Options& options, std::string* diag) {
  if (options.fuel_from_flag) return true;
  const char* env = std::getenv("CPFCERT_FUEL");
  if (!env) return true;
  std::string text(env);
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    *diag = "CPFCERT_FUEL is not a nonnegative integer: \"" + text + "\"";
    return false;
  }
  try {
    options.fuel = std::stoull(text);
  } catch (const std::out_of_range&) {
    *diag = "CPFCERT_FUEL is out of range: \"" + text + "\"";
    return false;
  }
  return true;
}

int run_check(const Options& options) {
  bool prefix = options.files.size() > 1;
  bool json = options.format == "json";
  int worst = 0;
  for (const std::string& file : options.files) {
    std::string diag;
    std::string stdout_block;
    int code = 0;
    auto cp = load_certificate(file, &diag);
    if (!cp) {
      code = 4;
      print_diag(file, prefix, diag);
      if (json) stdout_block = error_json(diag).dump() + "\n";
    } else {
      cpfcert::Verdict verdict = cpfcert::check(*cp, cpfcert::FuelConfig{options.fuel});
      code = exit_code_of(verdict);
      stdout_block = json ? verdict_json(verdict).dump() + "\n"
                          : with_prefix(file, prefix, verdict_text(verdict));
    }
    std::cout << stdout_block << std::flush;
    if (severity_rank(code) > severity_rank(worst)) worst = code;
  }
  return worst;
}

int run_validate(const Options& options) {
  bool prefix = options.files.size() > 1;
  int worst = 0;
  for (const std::string& file : options.files) {
    std::string io_error;
    auto bytes = read_file(file, &io_error);
    if (!bytes) {
      print_diag(file, prefix, io_error);
      worst = 4;
      continue;
    }
    std::vector<cpfcert::CpfError> errors = cpfcert::validate_schema(*bytes);
    if (errors.empty()) {
      std::cout << with_prefix(file, prefix, "OK\n");
    } else {
      for (const auto& error : errors) print_diag(file, prefix, error.to_string());
      worst = 4;
    }
  }
  return worst;
}

int run_render(const std::string& file, const std::string& out_path) {
  std::string diag;
  auto cp = load_certificate(file, &diag);
  if (!cp) {
    print_diag(file, false, diag);
    return 4;
  }
  std::string html = cpfcert::render_html(*cp);
  if (out_path.empty()) {
    std::cout << html;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << html;
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certifier for XML proof certificates about term rewrite systems"};
  app.require_subcommand(1);

  Options options;
  std::string render_file;
  std::string render_out;

  CLI::App* check = app.add_subcommand("check", "Parse, validate and re-check certificates");
  check->add_option("files", options.files, "certificate files")->required()->expected(-1);
  check->add_option("--fuel", options.fuel, "step budget for normal-form computations")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--format", options.format, "verdict output format")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* validate = app.add_subcommand("validate", "Schema validation only");
  validate->add_option("files", options.files, "certificate files")->required()->expected(-1);

  CLI::App* render = app.add_subcommand("render", "Render a certificate to HTML");
  render->add_option("file", render_file, "certificate file")->required();
  render->add_option("-o,--output", render_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 4;
  }

  options.fuel_from_flag = check->count("--fuel") > 0;
  std::string diag;
  if (!resolve_fuel(options, &diag)) {
    std::cerr << diag << "\n";
    return 4;
  }

  if (check->parsed()) return run_check(options);
  if (validate->parsed()) return run_validate(options);
  if (render->parsed()) return run_render(render_file, render_out);
  return 4;
}
