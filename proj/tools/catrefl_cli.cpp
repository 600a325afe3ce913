// Command-line driver: parses spec documents, runs the hypothesis checker and
// the construction pipeline, and reports findings one per line.
//
// Exit codes: 0 all-pass, 1 verification findings, 2 parse/lowering errors,
// 3 internal-consistency fault.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "catrefl/oracle.hpp"
#include "catrefl/speclang.hpp"

using namespace catrefl;
namespace sl = catrefl::speclang;

namespace {

struct Options {
  std::string file;
  std::string report_path;
  std::size_t max_arrows = 200;
  bool oracle = false;
};

int finish(const std::string& text, const Options& opt, int code) {
  std::cout << text;
  if (!opt.report_path.empty()) {
    std::ofstream out(opt.report_path);
    out << text;
  }
  return code;
}

struct Loaded {
  sl::Lowered lowered;
  std::string error_text;
  bool ok = false;
};

Loaded load(const std::string& path) {
  Loaded out;
  std::ifstream in(path);
  if (!in) {
    out.error_text = "ERROR IO - cannot read '" + path + "'\n";
    return out;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto parsed = sl::parse(ss.str());
  if (!parsed.doc) {
    out.error_text = sl::serialize_parse_errors(parsed.errors);
    return out;
  }
  out.lowered = sl::lower(*parsed.doc);
  if (!out.lowered.ok()) {
    out.error_text = sl::serialize_lower_errors(out.lowered.errors);
    return out;
  }
  out.ok = true;
  return out;
}

// Reduces any payload to reflection data, collecting informational lines.
struct DataView {
  std::optional<ReflectionData> data;
  std::string notes;
  bool hard_error = false;  // unusable payload (exit 2)
};

DataView to_reflection_data(const sl::Lowered& low) {
  DataView out;
  if (const auto* rd = std::get_if<ReflectionData>(&low.payload)) {
    out.data = *rd;
    return out;
  }
  if (const auto* fd = std::get_if<FunctionalData>(&low.payload)) {
    FunctionalToRelational f2r = functional_to_relational(*fd);
    out.notes += sl::serialize(f2r.report);
    if (f2r.data) {
      out.notes += "INFO ORIENTATION - " + f2r.orientation + "\n";
      out.data = std::move(*f2r.data);
    }
    return out;
  }
  if (const auto* adj = std::get_if<Adjunction>(&low.payload)) {
    DerivedData enc = encode_reflection(*adj);
    out.notes += sl::serialize(enc.report);
    if (enc.data) out.data = std::move(*enc.data);
    return out;
  }
  if (const auto* name = std::get_if<std::string>(&low.payload)) {
    try {
      out.data = build_instance(*name).encoding;
    } catch (const std::invalid_argument& e) {
      out.notes += std::string("ERROR E204 - ") + e.what() + "\n";
      out.hard_error = true;
    }
    return out;
  }
  out.notes += "ERROR E204 - document carries no checkable payload\n";
  out.hard_error = true;
  return out;
}

int cmd_validate(const Options& opt) {
  Loaded l = load(opt.file);
  if (!l.ok) return finish(l.error_text, opt, 2);
  std::string text;
  bool findings = false;
  for (const auto& [name, cat] : l.lowered.categories) {
    ValidationReport rep = validate_category(*cat);
    text += "INFO CATEGORY " + name + " objects=" + std::to_string(cat->objects.size()) +
            " arrows=" + std::to_string(cat->arrows.size()) + "\n";
    text += sl::serialize(rep);
    findings = findings || !rep.ok();
  }
  for (const auto& [name, fun] : l.lowered.functors) {
    ValidationReport rep = validate_functor(fun);
    text += "INFO FUNCTOR " + name + "\n";
    text += sl::serialize(rep);
    findings = findings || !rep.ok();
  }
  text += findings ? "RESULT fail\n" : "RESULT pass\n";
  return finish(text, opt, findings ? 1 : 0);
}

int cmd_hypotheses(const Options& opt) {
  Loaded l = load(opt.file);
  if (!l.ok) return finish(l.error_text, opt, 2);
  DataView view = to_reflection_data(l.lowered);
  if (!view.data) return finish(view.notes, opt, view.hard_error ? 2 : 1);
  HypothesisReport rep = check_hypotheses(*view.data);
  std::string text = view.notes + sl::serialize(rep);
  return finish(text, opt, rep.pass() ? 0 : 1);
}

std::string oracle_text(const ReflectionData& d, const AdjunctionBundle& b, const Options& opt) {
  if (d.U->arrows.size() > opt.max_arrows)
    return "INFO ORACLE - skipped, U has more than " + std::to_string(opt.max_arrows) +
           " arrows\n";
  ValidationReport rep = oracle::crosscheck_constructions(
      d, {b.Rt, b.provenanceR, b.entriesR}, {b.St, b.provenanceS, b.entriesS});
  if (rep.ok()) return "INFO ORACLE - enumeration matches the builders\n";
  return sl::serialize(rep);
}

int cmd_build(const Options& opt) {
  Loaded l = load(opt.file);
  if (!l.ok) return finish(l.error_text, opt, 2);
  DataView view = to_reflection_data(l.lowered);
  if (!view.data) return finish(view.notes, opt, view.hard_error ? 2 : 1);
  PipelineResult res = run_pipeline(*view.data);
  std::string text = view.notes + sl::serialize(res.hypotheses);
  if (!res.bundle) return finish(text, opt, 1);
  text += sl::summary_text(*res.bundle);
  if (opt.oracle) text += oracle_text(*view.data, *res.bundle, opt);
  return finish(text, opt, res.pass() ? 0 : 1);
}

int cmd_verify(const Options& opt) {
  Loaded l = load(opt.file);
  if (!l.ok) return finish(l.error_text, opt, 2);
  DataView view = to_reflection_data(l.lowered);
  if (!view.data) return finish(view.notes, opt, view.hard_error ? 2 : 1);
  PipelineResult res = run_pipeline(*view.data);
  std::string text = view.notes + sl::serialize(res.hypotheses);
  bool ok = res.pass();
  if (res.bundle) {
    text += sl::serialize(res.verification);
    text += sl::summary_text(*res.bundle);
    if (opt.oracle) {
      std::string otext = oracle_text(*view.data, *res.bundle, opt);
      ok = ok && otext.rfind("ERROR", 0) != 0;
      text += otext;
    }
  }
  if (res.classification) {
    text += sl::serialize(res.classification->details);
    text += "RESULT " + res.classification->classification + "\n";
  } else {
    text += "RESULT fail\n";
  }
  return finish(text, opt, ok ? 0 : 1);
}

int cmd_dual(const Options& opt) {
  Loaded l = load(opt.file);
  if (!l.ok) return finish(l.error_text, opt, 2);
  DataView view = to_reflection_data(l.lowered);
  if (!view.data) return finish(view.notes, opt, view.hard_error ? 2 : 1);
  DerivedData res = swap_dual(*view.data);
  std::string text = view.notes + sl::serialize(res.report);
  if (res.output_hypotheses) text += sl::serialize(*res.output_hypotheses);
  text += res.ok() ? "RESULT pass\n" : "RESULT fail\n";
  return finish(text, opt, res.ok() ? 0 : 1);
}

int cmd_roundtrip(const Options& opt) {
  Loaded l = load(opt.file);
  if (!l.ok) return finish(l.error_text, opt, 2);
  const auto* adj = std::get_if<Adjunction>(&l.lowered.payload);
  if (!adj)
    return finish("ERROR E204 - roundtrip needs an adjunction document\n", opt, 2);
  ValidationReport rep = completeness_roundtrip(*adj);
  std::string text = sl::serialize(rep);
  text += rep.ok() ? "RESULT pass\n" : "RESULT fail\n";
  return finish(text, opt, rep.ok() ? 0 : 1);
}

std::string instance_report(const std::string& name, bool& ok) {
  InstanceBundle bundle = build_instance(name);
  ValidationReport rep = verify_instance(bundle);
  PipelineResult res = run_pipeline(bundle.encoding);
  std::string text = "INFO INSTANCE " + name + " ambient=" + bundle.ambient.A->name + "/" +
                     bundle.ambient.B->name + "\n";
  text += sl::serialize(rep);
  if (res.bundle) text += sl::summary_text(*res.bundle);
  if (rep.ok() && res.classification) {
    text += "RESULT " + res.classification->classification + "\n";
  } else {
    text += "RESULT fail\n";
    ok = false;
  }
  return text;
}

int cmd_instance(const std::string& name, const Options& opt) {
  bool ok = true;
  std::string text;
  try {
    text = instance_report(name, ok);
  } catch (const std::invalid_argument& e) {
    return finish(std::string("ERROR E204 - ") + e.what() + "\n", opt, 2);
  }
  return finish(text, opt, ok ? 0 : 1);
}

int cmd_gallery(const Options& opt) {
  bool ok = true;
  std::string text;
  for (const auto& name : instance_names()) text += instance_report(name, ok);
  text += ok ? "RESULT pass\n" : "RESULT fail\n";
  return finish(text, opt, ok ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-category reflection engine"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--report", opt.report_path, "also write the report to this path");
  app.add_option("--max-arrows", opt.max_arrows, "enumeration bound for the oracle")
      ->default_val(200);
  app.add_flag("--oracle", opt.oracle, "cross-check the builders by brute force");

  std::string instance_name;
  auto* validate = app.add_subcommand("validate", "category and functor laws");
  validate->add_option("file", opt.file)->required();
  auto* hypotheses = app.add_subcommand("hypotheses", "the four admissibility hypotheses");
  hypotheses->add_option("file", opt.file)->required();
  auto* build = app.add_subcommand("build", "construct R~ and S~, emit a summary");
  build->add_option("file", opt.file)->required();
  auto* verify = app.add_subcommand("verify", "full pipeline with verification");
  verify->add_option("file", opt.file)->required();
  auto* dual = app.add_subcommand("dual", "role-swap duality");
  dual->add_option("file", opt.file)->required();
  auto* roundtrip = app.add_subcommand("roundtrip", "completeness round-trip of an adjunction");
  roundtrip->add_option("file", opt.file)->required();
  auto* instance = app.add_subcommand("instance", "build and verify one gallery instance");
  instance->add_option("name", instance_name)->required();
  auto* gallery = app.add_subcommand("gallery", "run every gallery instance");
  (void)gallery;

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (hypotheses->parsed()) return cmd_hypotheses(opt);
    if (build->parsed()) return cmd_build(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (dual->parsed()) return cmd_dual(opt);
    if (roundtrip->parsed()) return cmd_roundtrip(opt);
    if (instance->parsed()) return cmd_instance(instance_name, opt);
    return cmd_gallery(opt);
  } catch (const InternalConsistencyFault& e) {
    std::cout << "ERROR FAULT - " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    std::cout << "ERROR FAULT - " << e.what() << "\n";
    return 3;
  }
}
