#include "ttd/ttd.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "report.hpp"
#include "ttd/ffverify.hpp"

struct ttd_point {
  ttd::ModuliPoint<ttd::QQ> value;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

ttd_status status_of(ttd::Errc c) {
  using ttd::Errc;
  switch (c) {
    case Errc::usage:
      return TTD_USAGE;
    case Errc::degenerate:
    case Errc::degenerate_input:
    case Errc::indeterminate:
      return TTD_DEGENERATE;
    case Errc::bad_reduction:
      return TTD_BAD_REDUCTION;
    case Errc::inconclusive_local_image:
      return TTD_INCONCLUSIVE;
    case Errc::invariant_violation:
    case Errc::bound_violation:
      return TTD_CHECK_FAILED;
    default:
      return TTD_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ttd_status emit(const ttd::report::json& doc, char** json) {
  *json = dup(doc.dump(2) + "\n");
  if (!*json) {
    g_last_error = "out of memory";
    return TTD_INTERNAL;
  }
  const auto& st = doc["status"];
  if (st == "ok") return TTD_OK;
  if (st == "check-failed") {
    g_last_error = "certificate check failed";
    return TTD_CHECK_FAILED;
  }
  return TTD_INTERNAL;
}

// Runs a verb; errors become error documents with a matching status.
template <class F>
ttd_status run_verb(const char* verb, const ttd_point* p, char** json, F&& f) {
  g_last_error.clear();
  if (!json) {
    g_last_error = "null output pointer";
    return TTD_USAGE;
  }
  *json = nullptr;
  if (!p && std::strcmp(verb, "certify-identities") != 0) {
    g_last_error = "null point";
    return TTD_USAGE;
  }
  const ttd::ModuliPoint<ttd::QQ>* pt = p ? &p->value : nullptr;
  try {
    return emit(f(), json);
  } catch (const ttd::Error& e) {
    g_last_error = e.what();
    const ttd_status s = status_of(e.code());
    emit(ttd::report::error_doc(verb, e, pt), json);
    return s;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TTD_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    emit(ttd::report::error_doc(verb, ttd::Error(ttd::Errc::invariant_violation, e.what()), pt), json);
    return TTD_INTERNAL;
  }
}

std::optional<ttd::ModuliMap> map_of(const char* map) {
  if (!map || !*map) return std::nullopt;
  return ttd::parse_moduli_map(map);
}

}  // namespace

extern "C" {

const char* ttd_version(void) { return "1.0.0"; }

const char* ttd_status_name(ttd_status s) {
  switch (s) {
    case TTD_OK: return "ok";
    case TTD_CHECK_FAILED: return "check-failed";
    case TTD_USAGE: return "usage";
    case TTD_DEGENERATE: return "degenerate";
    case TTD_BAD_REDUCTION: return "bad-reduction";
    case TTD_INCONCLUSIVE: return "inconclusive";
    case TTD_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ttd_last_error(void) { return g_last_error.c_str(); }

ttd_status ttd_point_parse(const char* rst, ttd_point** out) {
  g_last_error.clear();
  if (!rst || !out) {
    g_last_error = "null argument";
    return TTD_USAGE;
  }
  *out = nullptr;
  try {
    *out = new ttd_point{ttd::parse_moduli_point(rst), rst};
    return TTD_OK;
  } catch (const ttd::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TTD_INTERNAL;
  }
}

void ttd_point_free(ttd_point* p) { delete p; }

ttd_status ttd_parse_direction(const char* name, ttd_direction* out) {
  g_last_error.clear();
  try {
    *out = ttd::parse_direction(name ? name : "") == ttd::Direction::sigma ? TTD_SIGMA : TTD_SIGMA_DUAL;
    return TTD_OK;
  } catch (const ttd::Error& e) {
    g_last_error = e.what();
    return TTD_USAGE;
  }
}

ttd_status ttd_build_json(const ttd_point* p, char** json) {
  return run_verb("build", p, json, [&] { return ttd::report::build(p->value); });
}

ttd_status ttd_isogeny_json(const ttd_point* p, char** json) {
  return run_verb("isogeny", p, json, [&] { return ttd::report::isogeny(p->value); });
}

ttd_status ttd_verify_json(const ttd_point* p, const char* map, char** json) {
  return run_verb("verify", p, json, [&] { return ttd::report::verify(p->value, map_of(map)); });
}

ttd_status ttd_count_json(const ttd_point* p, uint64_t prime, int tilde, char** json) {
  return run_verb("count", p, json, [&] { return ttd::report::count(p->value, prime, tilde != 0); });
}

ttd_status ttd_selmer_json(const ttd_point* p, ttd_direction dir, uint64_t seed, char** json) {
  const auto d = dir == TTD_SIGMA ? ttd::Direction::sigma : ttd::Direction::sigma_dual;
  return run_verb("selmer", p, json, [&] { return ttd::report::selmer(p->value, d, seed); });
}

ttd_status ttd_auto_json(const ttd_point* p, const char* map, uint64_t seed, char** json) {
  return run_verb("auto", p, json, [&] { return ttd::report::run_all(p->value, seed, map_of(map)); });
}

ttd_status ttd_certify_identities_json(uint64_t prime, char** json) {
  return run_verb("certify-identities", nullptr, json,
                  [&] { return ttd::report::certify_identities(prime ? prime : ttd::kLargePrime); });
}

char* ttd_usage_error_json(const char* verb, const char* message) {
  const ttd::Error e(ttd::Errc::usage, message ? message : "");
  return dup(ttd::report::error_doc(verb ? verb : "", e).dump(2) + "\n");
}

void ttd_string_free(char* s) { std::free(s); }

}  // extern "C"
