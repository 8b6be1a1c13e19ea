#include "frjac.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "pipeline.hpp"

struct frjac_session {
  std::string text;
  std::string name;
  frjac::run_options opts;
  std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) return nullptr;
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* frjac_version(void) { return "frjac 1.0.0"; }

frjac_status frjac_open_buffer(const char* text, size_t len, const char* name, frjac_session** out) {
  if (!text || !out) return FRJAC_E_ARGUMENT;
  try {
    auto* s = new frjac_session;
    s->text.assign(text, len);
    s->name = name ? name : "<buffer>";
    *out = s;
    return FRJAC_OK;
  } catch (const std::bad_alloc&) {
    return FRJAC_E_NOMEM;
  }
}

frjac_status frjac_open_file(const char* path, frjac_session** out) {
  if (!path || !out) return FRJAC_E_ARGUMENT;
  std::ifstream f(path, std::ios::binary);
  if (!f) return FRJAC_E_IO;
  std::ostringstream buf;
  buf << f.rdbuf();
  std::string text = buf.str();
  return frjac_open_buffer(text.c_str(), text.size(), path, out);
}

void frjac_close(frjac_session* s) { delete s; }

const char* frjac_last_error(const frjac_session* s) { return s ? s->last_error.c_str() : "null session"; }

frjac_status frjac_set_option(frjac_session* s, const char* key, const char* value) {
  if (!s || !key || !value) return FRJAC_E_ARGUMENT;
  std::string k = key, v = value;
  try {
    if (k == "field") {
      if (v != "Q" && v != "Fp") {
        s->last_error = "field must be Q or Fp";
        return FRJAC_E_ARGUMENT;
      }
      s->opts.field_name = v;
    } else if (k == "prime") {
      s->opts.prime = std::stoull(v);
    } else if (k == "gb_cap") {
      s->opts.gb_cap = std::stoi(v);
    } else if (k == "degree_cap") {
      s->opts.degree_cap = std::stoi(v);
    } else if (k == "resolve_cap") {
      s->opts.resolve_cap = std::stoi(v);
    } else if (k == "graded") {
      s->opts.graded = v == "1" || v == "true";
    } else if (k == "dump_matrices") {
      s->opts.dump_matrices = v == "1" || v == "true";
    } else {
      s->last_error = "unknown option '" + k + "'";
      return FRJAC_E_ARGUMENT;
    }
    return FRJAC_OK;
  } catch (const std::exception& e) {
    s->last_error = std::string("bad option value: ") + e.what();
    return FRJAC_E_ARGUMENT;
  }
}

frjac_status frjac_run(frjac_session* s, const char* command, char** report_json) {
  if (!s || !command || !report_json) return FRJAC_E_ARGUMENT;
  try {
    nlohmann::json rep;
    std::string cmd = command;
    if (cmd == "check")
      rep = frjac::run_check(s->text, s->name, s->opts);
    else
      rep = frjac::run_stage(s->text, s->name, cmd, s->opts);
    std::string out = rep.dump(2);
    *report_json = dup_string(out);
    if (!*report_json) return FRJAC_E_NOMEM;
    return FRJAC_OK;
  } catch (const std::bad_alloc&) {
    return FRJAC_E_NOMEM;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return FRJAC_E_INTERNAL;
  }
}

int frjac_report_exit_code(const char* report_json) {
  if (!report_json) return 2;
  try {
    nlohmann::json rep = nlohmann::json::parse(report_json);
    return frjac::exit_code_of(rep);
  } catch (const std::exception&) {
    return 2;
  }
}

void frjac_free(char* p) { std::free(p); }

}  // extern "C"
