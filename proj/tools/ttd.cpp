// ttd: command-line driver over the libttd C interface.
//
//   ttd build   --rst 2,-1,-2
//   ttd selmer  --rst -2,1,2 --direction sigma-dual
//   ttd count   --rst 2,-1,-2 --p 7 --tilde
//
// Exit status: 0 ok, 2 failed mathematical check, 1 usage or degenerate input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ttd/ttd.h"

namespace {

struct Options {
  std::string rst;
  std::uint64_t p = 0;
  bool tilde = false;
  std::string direction = "sigma-dual";
  std::string map;
  std::string out;
  std::uint64_t seed = 0;
};

int exit_code(ttd_status s) {
  if (s == TTD_OK) return 0;
  if (s == TTD_CHECK_FAILED) return 2;
  return 1;
}

int write(const char* doc, const std::string& out) {
  if (!doc) return 1;
  if (out.empty()) {
    std::fputs(doc, stdout);
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  f << doc;
  if (!f) {
    std::cerr << "ttd: cannot write " << out << "\n";
    return 1;
  }
  return 0;
}

int usage_failure(const std::string& verb, const std::string& msg, const std::string& out) {
  std::cerr << "ttd " << verb << ": " << msg << "\n";
  char* doc = ttd_usage_error_json(verb.c_str(), msg.c_str());
  write(doc, out);
  ttd_string_free(doc);
  return 1;
}

int dispatch(const std::string& verb, const Options& o) {
  char* doc = nullptr;
  ttd_status st = TTD_OK;
  if (verb == "certify-identities") {
    st = ttd_certify_identities_json(o.p, &doc);
  } else {
    ttd_point* pt = nullptr;
    if (ttd_point_parse(o.rst.c_str(), &pt) != TTD_OK) return usage_failure(verb, ttd_last_error(), o.out);
    const char* map = o.map.empty() ? nullptr : o.map.c_str();
    if (verb == "build") {
      st = ttd_build_json(pt, &doc);
    } else if (verb == "isogeny") {
      st = ttd_isogeny_json(pt, &doc);
    } else if (verb == "verify") {
      st = ttd_verify_json(pt, map, &doc);
    } else if (verb == "auto") {
      st = ttd_auto_json(pt, map, o.seed, &doc);
    } else if (verb == "count") {
      if (o.p == 0) {
        ttd_point_free(pt);
        return usage_failure(verb, "--p is required", o.out);
      }
      st = ttd_count_json(pt, o.p, o.tilde ? 1 : 0, &doc);
    } else if (verb == "selmer") {
      ttd_direction dir;
      if (ttd_parse_direction(o.direction.c_str(), &dir) != TTD_OK) {
        ttd_point_free(pt);
        return usage_failure(verb, ttd_last_error(), o.out);
      }
      st = ttd_selmer_json(pt, dir, o.seed, &doc);
    }
    ttd_point_free(pt);
  }
  if (st != TTD_OK) std::cerr << "ttd " << verb << ": " << ttd_status_name(st) << ": " << ttd_last_error() << "\n";
  const int w = write(doc, o.out);
  ttd_string_free(doc);
  return w ? 1 : exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genus-2 curves with (3,3)-split Jacobians: level structures, isogenies and descent"};
  app.set_version_flag("--version", std::string(ttd_version()));
  app.require_subcommand(1);
  Options o;

  auto add_point = [&](CLI::App* c) { c->add_option("--rst", o.rst, "moduli point r,s,t (rationals)")->required(); };
  auto add_out = [&](CLI::App* c) { c->add_option("--out,--json", o.out, "write the JSON document to this file"); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "seed of the local searches")->capture_default_str(); };
  const std::vector<std::string> maps{"psi0", "psi0prime", "psi1", "psi2", "psi3"};

  auto* build = app.add_subcommand("build", "family data, discriminant and pairing certificates");
  add_point(build);
  add_out(build);
  auto* iso = app.add_subcommand("isogeny", "the (3,3)-isogenous curve and its certificates");
  add_point(iso);
  add_out(iso);
  auto* verify = app.add_subcommand("verify", "identity, moduli-map and Igusa-Clebsch checks");
  add_point(verify);
  add_out(verify);
  verify->add_option("--map", o.map, "restrict to one moduli map")->check(CLI::IsMember(maps));
  auto* autov = app.add_subcommand("auto", "every stage in order");
  add_point(autov);
  add_out(autov);
  add_seed(autov);
  autov->add_option("--map", o.map, "restrict the moduli-map checks")->check(CLI::IsMember(maps));
  auto* count = app.add_subcommand("count", "point counts and Jacobian order over F_p");
  add_point(count);
  add_out(count);
  count->add_option("--p", o.p, "prime")->required();
  count->add_flag("--tilde", o.tilde, "count on the isogenous curve");
  auto* selmer = app.add_subcommand("selmer", "isogeny Selmer group");
  add_point(selmer);
  add_out(selmer);
  add_seed(selmer);
  selmer->add_option("--direction", o.direction, "sigma or sigma-dual")
      ->check(CLI::IsMember({"sigma", "sigma-dual"}))
      ->capture_default_str();
  auto* cert = app.add_subcommand("certify-identities", "grid certification of the identities in (r, s, t)");
  add_out(cert);
  cert->add_option("--p", o.p, "prime (default 2^61 - 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  return dispatch(app.get_subcommands().front()->get_name(), o);
}
