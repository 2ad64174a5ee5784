#ifndef TTD_TTD_H
#define TTD_TTD_H

/* C interface to libttd. Every verb writes a "ttd/1" JSON document into a
 * malloc'd string owned by the caller (free with ttd_string_free), also when
 * the returned status is an error. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TTD_API __declspec(dllexport)
#else
#define TTD_API __attribute__((visibility("default")))
#endif

typedef enum ttd_status {
  TTD_OK = 0,
  TTD_CHECK_FAILED = 1,  /* a certificate did not pass */
  TTD_USAGE = 2,         /* malformed argument */
  TTD_DEGENERATE = 3,    /* degenerate or indeterminate moduli point */
  TTD_BAD_REDUCTION = 4,
  TTD_INCONCLUSIVE = 5,  /* local image search ran out */
  TTD_INTERNAL = 6
} ttd_status;

typedef struct ttd_point ttd_point;

typedef enum ttd_direction { TTD_SIGMA = 0, TTD_SIGMA_DUAL = 1 } ttd_direction;

TTD_API const char* ttd_version(void);
TTD_API const char* ttd_status_name(ttd_status s);
/* Message of the last failure on this thread, "" if none. */
TTD_API const char* ttd_last_error(void);

/* "r,s,t" with each entry an integer or a/b. */
TTD_API ttd_status ttd_point_parse(const char* rst, ttd_point** out);
TTD_API void ttd_point_free(ttd_point* p);
TTD_API ttd_status ttd_parse_direction(const char* name, ttd_direction* out);

TTD_API ttd_status ttd_build_json(const ttd_point* p, char** json);
TTD_API ttd_status ttd_isogeny_json(const ttd_point* p, char** json);
/* map: NULL for every map, else psi0, psi0prime, psi1, psi2 or psi3. */
TTD_API ttd_status ttd_verify_json(const ttd_point* p, const char* map, char** json);
TTD_API ttd_status ttd_count_json(const ttd_point* p, uint64_t prime, int tilde, char** json);
TTD_API ttd_status ttd_selmer_json(const ttd_point* p, ttd_direction dir, uint64_t seed, char** json);
TTD_API ttd_status ttd_auto_json(const ttd_point* p, const char* map, uint64_t seed, char** json);
/* prime 0 selects 2^61 - 1. */
TTD_API ttd_status ttd_certify_identities_json(uint64_t prime, char** json);

/* Usage error document for failures before a verb runs. */
TTD_API char* ttd_usage_error_json(const char* verb, const char* message);

TTD_API void ttd_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
