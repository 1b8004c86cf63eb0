/* qsym: robustness analysis of quantum symmetries under Hamiltonian
 * perturbations. C interface to the analysis engine.
 *
 * Every analysis runs through qsym_execute: pass a command name and a JSON
 * request (matrix file paths or inline matrices plus options), receive an
 * opaque report handle carrying a JSON document and a status code.
 */
#ifndef QSYM_H
#define QSYM_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as CLI exit codes. */
enum qsym_status {
  QSYM_OK = 0,            /* success; for classify: symmetry is robust */
  QSYM_USAGE = 1,         /* bad request, parse error, unknown command */
  QSYM_NUMERIC = 2,       /* numeric failure (eps too large, not a symmetry, ...) */
  QSYM_FRAGILE = 3,       /* classify: symmetry is fragile */
  QSYM_INCONCLUSIVE = 4   /* classify: verdict inconclusive */
};

typedef struct qsym_report qsym_report;

/* Run a command ("classify", "commutant", "bicommutant", "kato", "wander",
 * "adiabatic", "restricted", "scenario") with a JSON request string.
 * On return *out holds a report (never NULL on a 0 return from allocation);
 * the caller owns it and must free it with qsym_report_free.
 * Returns the status code, which is also stored in the report. */
int qsym_execute(const char* command, const char* request_json,
                 qsym_report** out);

/* JSON document of the report; owned by the report handle. */
const char* qsym_report_json(const qsym_report* report);

int qsym_report_status(const qsym_report* report);

void qsym_report_free(qsym_report* report);

const char* qsym_version(void);

#ifdef __cplusplus
}
#endif

#endif /* QSYM_H */
