#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ptt/frontend.hpp"

namespace {

using namespace ptt;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Loads a file into the session; prints diagnostics; returns false on any.
bool load(Session& s, const std::string& path) {
  SourceFile f = parse_file(read_file(path), path);
  ElabResult res = elaborate_file(s, f);
  for (const auto& d : res.diagnostics) std::cerr << d.render() << "\n";
  return res.ok();
}

IntervalCtx parse_dims(const std::string& spec) {
  IntervalCtx psi;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item[0] == '#')
      psi.add_bridge(item.substr(1));
    else
      psi.add_path(item);
  }
  return psi;
}

const Definition* find_def(Session& s, const std::string& name) {
  const Definition* d = s.defs.lookup(name);
  if (!d) std::cerr << "no definition named " << name << "\n";
  return d;
}

int cmd_check(const std::vector<std::string>& files) {
  bool ok = true;
  for (const auto& f : files) {
    Session s;
    if (!load(s, f)) ok = false;
  }
  return ok ? 0 : 1;
}

TraceFn tracer(bool on) {
  if (!on) return nullptr;
  return [](const std::string& rule, const std::string& path) {
    std::cerr << rule << (path.empty() ? "" : " @ " + path) << "\n";
  };
}

int cmd_normalize(const std::string& file, const std::string& name, long long fuel_n,
                  bool trace) {
  Session s;
  s.fuel_limit = fuel_n;
  if (!load(s, file)) return 1;
  const Definition* d = find_def(s, name);
  if (!d) return 1;
  IntervalCtx psi = d->dims;
  Fuel fuel(fuel_n);
  try {
    Term v = deep_normalize(&s.defs, psi, d->body, fuel, tracer(trace));
    std::cout << print_term(v) << "\n";
  } catch (const TypeError& e) {
    std::cerr << e.diag.render() << "\n";
    return 1;
  } catch (const FuelExhausted&) {
    std::cerr << "FuelExhausted: normalization of " << name << " ran out of fuel\n";
    return 1;
  }
  return 0;
}

int cmd_eval(const std::string& file, const std::string& name, const std::string& dims,
             long long fuel_n, bool trace) {
  Session s;
  s.fuel_limit = fuel_n;
  if (!load(s, file)) return 1;
  const Definition* d = find_def(s, name);
  if (!d) return 1;
  std::vector<int> fv;
  collect_free_term_vars(d->body, fv);
  if (!fv.empty()) {
    std::cerr << "definition " << name << " is not term-variable-closed\n";
    return 1;
  }
  IntervalCtx psi = d->dims;
  for (const auto& e : parse_dims(dims).entries) psi.entries.push_back(e);
  Fuel fuel(fuel_n);
  try {
    Term v = eval(&s.defs, psi, d->body, fuel, tracer(trace));
    std::cout << print_term(v) << "\n";
  } catch (const TypeError& e) {
    std::cerr << e.diag.render() << "\n";
    return 1;
  } catch (const FuelExhausted&) {
    std::cerr << "FuelExhausted: evaluation of " << name << " ran out of fuel\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parametric cubical type theory checker"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string def_name, dims;
  long long fuel_n = 1000000;
  bool trace = false;

  auto* check = app.add_subcommand("check", "type-check files");
  check->add_option("files", files, "input .ptt files")->required();
  check->add_option("--fuel", fuel_n, "evaluation fuel");

  auto* norm = app.add_subcommand("normalize", "print the normal form of a definition");
  std::string nfile;
  norm->add_option("file", nfile, "input .ptt file")->required();
  norm->add_option("--def", def_name, "definition name")->required();
  norm->add_option("--fuel", fuel_n, "evaluation fuel");
  norm->add_flag("--trace", trace, "print one line per reduction step");

  auto* ev = app.add_subcommand("eval", "evaluate a definition to a value");
  std::string efile;
  ev->add_option("file", efile, "input .ptt file")->required();
  ev->add_option("--def", def_name, "definition name")->required();
  ev->add_option("--dims", dims, "extra ambient dimensions, e.g. x,#y");
  ev->add_option("--fuel", fuel_n, "evaluation fuel");
  ev->add_flag("--trace", trace, "print one line per reduction step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(files);
    if (norm->parsed()) return cmd_normalize(nfile, def_name, fuel_n, trace);
    if (ev->parsed()) return cmd_eval(efile, def_name, dims, fuel_n, trace);
  } catch (const ptt::TypeError& e) {
    std::cerr << e.diag.render() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
