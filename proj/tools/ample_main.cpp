// Command-line front end: declarative documents in, reports out.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ample/document.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct VerbSpec {
  std::string verb;
  std::string help;
  std::vector<std::pair<std::string, std::string>> options;  // flag, help
  bool needs_file = true;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational duality between finite groupoids and Boolean "
               "inverse semigroups: cohomology, twists, crossed products"};
  app.require_subcommand(1);

  std::string format = "human";
  long cap = 1 << 20;
  long table_cap = 10'000'000;
  std::string field_flag;
  unsigned seed = 0;
  app.add_option("--format", format, "output format: human|machine")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--cap", cap, "bisection enumeration cap");
  app.add_option("--table-cap", table_cap, "cocycle table enumeration cap");
  app.add_option("--field", field_flag, "coefficient field: a prime p or Q");
  app.add_option("--seed", seed, "seed for randomized property sweeps");

  std::vector<VerbSpec> specs = {
      {"gamma-c",
       "bisection semigroup of a groupoid record",
       {{"record", "groupoid record"}},
       true},
      {"germ",
       "germ groupoid of a Boolean inverse semigroup record",
       {{"record", "Boolean semigroup record"}},
       true},
      {"eta-eps",
       "verify both duality round trips on a groupoid record",
       {{"record", "groupoid record"}},
       true},
      {"h2",
       "second cohomology of a module (explicit or tilde_A over a groupoid)",
       {{"module", "module record"},
        {"groupoid", "groupoid record"},
        {"group", "abelian group record"},
        {"oracle", "true for the unpruned oracle"}},
       true},
      {"classify-twists",
       "realize every cohomology class as a twist and check the bijection",
       {{"groupoid", "groupoid record"}, {"group", "abelian group record"}},
       true},
      {"baer",
       "Baer sum of two twists; checks the class group law",
       {{"lhs", "twist record"}, {"rhs", "twist record"}},
       true},
      {"crossed",
       "build a crossed product and print its structure constants",
       {{"record", "crossed_product record"}},
       true},
      {"steinberg",
       "build a twisted Steinberg algebra and print its structure constants",
       {{"record", "steinberg record"}},
       true},
      {"iso-check",
       "verify the crossed product / Steinberg algebra isomorphism",
       {{"twist", "twist record"}},
       true},
      {"verify-all", "run the full verification suite", {}, false},
  };

  struct SubState {
    std::string file;
    std::map<std::string, std::string> args;
  };
  std::map<std::string, SubState> state;

  for (auto& spec : specs) {
    auto* sub = app.add_subcommand(spec.verb, spec.help);
    sub->fallthrough();  // global flags may follow the verb
    auto& st = state[spec.verb];
    if (spec.needs_file)
      sub->add_option("file", st.file, "document file")->required();
    else
      sub->add_option("file", st.file, "document file");
    for (auto& [flag, help] : spec.options)
      sub->add_option("--" + flag, st.args[flag], help);
  }

  CLI11_PARSE(app, argc, argv);

  auto* sub = app.get_subcommands().front();
  const std::string verb = sub->get_name();
  auto& st = state[verb];

  ample::CommandOptions opts;
  opts.cap = cap;
  opts.table_cap = table_cap;
  opts.seed = seed;
  if (!field_flag.empty())
    opts.field = (field_flag == "Q" || field_flag == "q")
                     ? ample::FieldDesc::Q()
                     : ample::FieldDesc::Fp(std::stoll(field_flag));

  try {
    ample::Document doc;
    if (!st.file.empty()) doc = ample::parse_document(slurp(st.file));
    std::map<std::string, std::string> args;
    for (auto& [k, v] : st.args)
      if (!v.empty()) args[k] = v;
    // global --field is also visible to verbs that accept it as an arg
    if (!field_flag.empty() && !args.count("field")) args["field"] = field_flag;
    auto report = ample::run_command(verb, args, doc, opts);
    std::cout << (format == "machine" ? report.machine() : report.human());
    return report.ok ? 0 : 1;
  } catch (const ample::ValidationError& e) {
    if (format == "machine")
      std::cout << "error=" << e.code() << "\nmessage=" << e.what()
                << "\nok=false\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
