/*
 * Copyright 2026 The SAMA Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "sama/harness/scenario.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sama/cpabe/policy.h"
#include "sama/harness/bench.h"

namespace sama::harness {
namespace {

using Json = nlohmann::json;
using protocol::RequestKind;

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, "scenario: " + what);
}

void OnlyKeys(const Json& j, const std::string& where,
              std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) Bad(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      Bad("unknown key '" + k + "' in " + where);
    }
  }
}

BigInt ToBig(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) {
      Bad(where + ": '" + s + "' is not a nonnegative integer");
    }
    return BigInt(s);
  }
  Bad(where + " must be a nonnegative integer or a decimal string");
}

cpabe::AttributeSet ToAttrs(const Json& j, const std::string& where) {
  if (!j.is_array()) Bad(where + " must be an array of strings");
  cpabe::AttributeSet out;
  for (const auto& a : j) {
    if (!a.is_string()) Bad(where + " must be an array of strings");
    out.insert(a.get<std::string>());
  }
  return out;
}

template <typename T>
T Get(const Json& j, const char* key, const std::string& where, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    Bad(where + "." + key + " has the wrong type");
  }
}

BigInt Mod(const BigInt& x, const BigInt& m) {
  BigInt out;
  mpz_mod(out.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return out;
}

struct Expected {
  std::optional<BigInt> value;
  std::optional<ErrorCode> error;
  std::uint64_t items = 0;
};

}  // namespace

ErrorCode ParseErrorCode(std::string_view name) {
  for (int c = 0; c <= static_cast<int>(ErrorCode::kProtocolState); ++c) {
    if (ErrorCodeName(static_cast<ErrorCode>(c)) == name) {
      return static_cast<ErrorCode>(c);
    }
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown error code '" + std::string(name) + "'");
}

Scenario ParseScenario(std::string_view json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::exception& e) {
    Bad(e.what());
  }
  OnlyKeys(root, "scenario",
           {"n_bits", "seed", "allow_any_size", "demask", "universe",
            "data_owners", "data_requesters", "requests"});
  Scenario s;
  s.n_bits = Get<int>(root, "n_bits", "scenario", 1024);
  s.seed = Get<std::uint64_t>(root, "seed", "scenario", 1);
  s.allow_any_size = Get<bool>(root, "allow_any_size", "scenario", false);
  const auto demask = Get<std::string>(root, "demask", "scenario", "negate");
  if (demask == "negate") {
    s.demask = protocol::DemaskMode::kNegateInClear;
  } else if (demask == "exponentiate") {
    s.demask = protocol::DemaskMode::kExponentiate;
  } else {
    Bad("demask must be 'negate' or 'exponentiate'");
  }
  s.universe = Get<std::vector<std::string>>(root, "universe", "scenario", {});

  std::set<std::string> owner_names, requester_names;
  for (const auto& o : root.value("data_owners", Json::array())) {
    OnlyKeys(o, "data owner", {"name", "ap_s", "ap_m", "data"});
    ScenarioOwner owner;
    owner.name = Get<std::string>(o, "name", "data owner", "");
    if (owner.name.empty() || !owner_names.insert(owner.name).second) {
      Bad("data owner names must be present and unique");
    }
    const std::string where = "data owner '" + owner.name + "'";
    if (o.contains("ap_s")) owner.ap_s = Get<std::string>(o, "ap_s", where, "");
    if (o.contains("ap_m")) owner.ap_m = Get<std::string>(o, "ap_m", where, "");
    if (owner.ap_s.has_value() != owner.ap_m.has_value()) {
      Bad(where + " needs both ap_s and ap_m, or neither");
    }
    for (const auto& v : o.value("data", Json::array())) {
      owner.data.push_back(ToBig(v, where + ".data"));
    }
    s.owners.push_back(std::move(owner));
  }
  for (const auto& r : root.value("data_requesters", Json::array())) {
    OnlyKeys(r, "data requester", {"name", "attributes", "claimed"});
    ScenarioRequester dr;
    dr.name = Get<std::string>(r, "name", "data requester", "");
    if (dr.name.empty() || !requester_names.insert(dr.name).second) {
      Bad("data requester names must be present and unique");
    }
    const std::string where = "data requester '" + dr.name + "'";
    dr.attributes = ToAttrs(r.value("attributes", Json::array()),
                            where + ".attributes");
    if (r.contains("claimed")) {
      dr.claimed = ToAttrs(r.at("claimed"), where + ".claimed");
    }
    s.requesters.push_back(std::move(dr));
  }
  std::size_t index = 0;
  for (const auto& q : root.value("requests", Json::array())) {
    const std::string where = "request " + std::to_string(index++);
    OnlyKeys(q, where,
             {"kind", "owner", "requester", "first", "count", "slot",
              "expect", "expect_error"});
    ScenarioRequest req;
    try {
      req.kind = ParseUseCase(Get<std::string>(q, "kind", where, ""));
    } catch (const Error& e) {
      Bad(where + ": " + e.what());
    }
    req.owner = Get<std::string>(q, "owner", where, "");
    req.requester = Get<std::string>(q, "requester", where, "");
    req.first = Get<std::uint64_t>(q, "first", where, 0);
    if (q.contains("count")) req.count = Get<std::uint64_t>(q, "count", where, 0);
    if (q.contains("slot")) req.slot = Get<std::uint64_t>(q, "slot", where, 0);
    if (q.contains("expect")) req.expect = ToBig(q.at("expect"), where);
    if (q.contains("expect_error")) {
      try {
        req.expect_error =
            ParseErrorCode(Get<std::string>(q, "expect_error", where, ""));
      } catch (const Error& e) {
        Bad(where + ": " + e.what());
      }
    }
    if (req.kind != RequestKind::kDrsDos && !owner_names.count(req.owner)) {
      Bad(where + " names unknown owner '" + req.owner + "'");
    }
    if (req.kind != RequestKind::kDoDo &&
        !requester_names.count(req.requester)) {
      Bad(where + " names unknown requester '" + req.requester + "'");
    }
    s.requests.push_back(std::move(req));
  }
  if (s.universe.empty()) {
    std::set<std::string> all;
    for (const auto& o : s.owners) {
      for (const auto* text : {&o.ap_s, &o.ap_m}) {
        if (!*text) continue;
        try {
          for (const auto& a : cpabe::ParsePolicy(**text).Attributes()) {
            all.insert(a);
          }
        } catch (const Error& e) {
          Bad("data owner '" + o.name + "': " + e.what());
        }
      }
    }
    for (const auto& r : s.requesters) {
      all.insert(r.attributes.begin(), r.attributes.end());
      if (r.claimed) all.insert(r.claimed->begin(), r.claimed->end());
    }
    s.universe.assign(all.begin(), all.end());
  }
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) Bad("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str());
}

bool ScenarioResult::ok() const {
  return std::all_of(requests.begin(), requests.end(),
                     [](const RequestReport& r) { return r.pass; });
}

ScenarioResult RunScenario(const Scenario& s) {
  protocol::DeploymentConfig dc;
  dc.n_bits = s.n_bits;
  dc.seed = s.seed;
  dc.allow_any_size = s.allow_any_size;
  dc.demask = s.demask;
  dc.universe = s.universe;
  dc.max_data_owners = std::max<std::size_t>(s.owners.size(), 1);
  protocol::Deployment d(dc);
  const BigInt& n = d.n();
  const BigInt bound = BigInt(1) << (s.n_bits - 4);

  ScenarioResult result;
  std::map<std::string, vphe::UserId> owner_ids;
  std::map<std::string, const ScenarioOwner*> owners;
  std::map<std::string, std::optional<cpabe::AccessTree>> ap_s, ap_m;
  for (const auto& o : s.owners) {
    const vphe::UserId id = d.AddDataOwner();
    owner_ids[o.name] = id;
    owners[o.name] = &o;
    if (o.ap_s) {
      ap_s[o.name] = cpabe::ParsePolicy(*o.ap_s);
      ap_m[o.name] = cpabe::ParsePolicy(*o.ap_m);
      d.RegisterPolicy(id, *ap_s[o.name], *ap_m[o.name]);
    }
    for (const BigInt& m : o.data) {
      if (m >= n) {
        result.warnings.push_back("data owner '" + o.name +
                                  "' has a value >= n; it is reduced mod n");
      }
      d.Upload(id, m);
    }
  }
  std::map<std::string, std::uint64_t> requester_ids;
  std::map<std::string, const ScenarioRequester*> requesters;
  for (const auto& r : s.requesters) {
    const std::uint64_t id = d.AddDataRequester(r.attributes);
    if (r.claimed) d.data_requester(id).set_claimed_attributes(*r.claimed);
    requester_ids[r.name] = id;
    requesters[r.name] = &r;
  }

  const auto range_oracle = [&](const ScenarioOwner& o,
                                const ScenarioRequest& q) {
    Expected e;
    const std::uint64_t size = o.data.size();
    const std::uint64_t count =
        q.count.value_or(q.first < size ? size - q.first : 0);
    if (count == 0 || q.first >= size || count > size - q.first) {
      e.error = ErrorCode::kEmptyRange;
      return e;
    }
    BigInt sum = 0;
    for (std::uint64_t i = q.first; i < q.first + count; ++i) sum += o.data[i];
    e.value = Mod(sum, n);
    e.items = count;
    return e;
  };

  for (std::size_t i = 0; i < s.requests.size(); ++i) {
    const ScenarioRequest& q = s.requests[i];
    protocol::AggregationRequest req;
    req.kind = q.kind;
    req.slot = q.slot;
    if (q.kind != RequestKind::kDrsDos) {
      const std::uint64_t size = owners.at(q.owner)->data.size();
      req.range = {q.first,
                   q.count.value_or(q.first < size ? size - q.first : 0)};
    }
    Expected want;
    if (q.kind == RequestKind::kDoDo) {
      const ScenarioOwner& o = *owners.at(q.owner);
      req.requester = req.target = owner_ids.at(q.owner);
      want = range_oracle(o, q);
    } else if (q.kind == RequestKind::kDrsDo) {
      const ScenarioOwner& o = *owners.at(q.owner);
      const ScenarioRequester& dr = *requesters.at(q.requester);
      req.requester = requester_ids.at(q.requester);
      req.target = owner_ids.at(q.owner);
      if (!ap_s[q.owner]) {
        want.error = ErrorCode::kProtocolState;
      } else {
        want = range_oracle(o, q);
        if (want.value && !cpabe::Satisfies(*ap_s[q.owner], dr.attributes)) {
          want = {std::nullopt, ErrorCode::kPolicyNotSatisfied, 0};
        }
      }
    } else {
      const ScenarioRequester& dr = *requesters.at(q.requester);
      req.requester = requester_ids.at(q.requester);
      const cpabe::AttributeSet& claimed = dr.claimed.value_or(dr.attributes);
      std::vector<const ScenarioOwner*> chosen;
      for (const auto& o : s.owners) {
        if (ap_m[o.name] && cpabe::Satisfies(*ap_m[o.name], claimed)) {
          chosen.push_back(&o);
        }
      }
      if (chosen.empty()) {
        want.error = ErrorCode::kPolicyNotSatisfied;
      } else {
        BigInt sum = 0;
        std::vector<cpabe::PolicyNode> distinct;
        std::set<std::string> seen;
        for (const ScenarioOwner* o : chosen) {
          const std::uint64_t size = o->data.size();
          const std::uint64_t slot = q.slot.value_or(size ? size - 1 : 0);
          if (slot >= size) {
            want.error = ErrorCode::kNoData;
            break;
          }
          sum += o->data[slot];
          const auto& tree = *ap_m[o->name];
          if (seen.insert(tree.ToString()).second) {
            distinct.push_back(tree.root());
          }
        }
        if (!want.error) {
          const cpabe::AccessTree common(distinct.size() == 1
                                             ? distinct.front()
                                             : cpabe::And(distinct));
          if (cpabe::Satisfies(common, dr.attributes)) {
            want.value = Mod(sum, n);
            want.items = chosen.size();
          } else {
            want.error = ErrorCode::kPolicyNotSatisfied;
          }
        }
      }
    }
    if (q.expect || q.expect_error) {
      want.value = q.expect;
      want.error = q.expect_error;
    }

    // Sums of this many items at the largest value could pass 2^(bits-4).
    BigInt max_m = 0;
    for (const auto& o : s.owners) {
      for (const BigInt& m : o.data) max_m = std::max(max_m, m);
    }
    if (want.items > 0 && BigInt(std::to_string(want.items)) * max_m >= bound) {
      result.warnings.push_back(
          "request " + std::to_string(i) +
          ": N * max(m) reaches 2^(n_bits-4); the result is only exact mod n");
    }

    const protocol::RunResult run = d.RunUseCase(req);
    RequestReport rep;
    rep.index = i;
    rep.kind = q.kind;
    rep.value = run.outcome.value;
    rep.error = run.outcome.error;
    rep.want_value = want.value;
    rep.want_error = want.error;
    rep.pass = run.outcome.done && rep.value == rep.want_value &&
               rep.error == rep.want_error;
    result.requests.push_back(std::move(rep));
  }
  for (const auto& e : d.errors()) {
    result.warnings.push_back("handler error at " + EndpointName(e.at) +
                              ": " + e.message);
  }
  result.transcript = d.transcript().Serialize();
  return result;
}

std::string FormatRequestReport(const RequestReport& r) {
  nlohmann::ordered_json j;
  j["request"] = r.index;
  j["kind"] = std::string(protocol::RequestKindName(r.kind));
  j["status"] = r.pass ? "PASS" : "FAIL";
  j["value"] = r.value ? Json(r.value->get_str()) : Json(nullptr);
  j["error"] = r.error ? Json(std::string(ErrorCodeName(*r.error)))
                       : Json(nullptr);
  j["expected_value"] =
      r.want_value ? Json(r.want_value->get_str()) : Json(nullptr);
  j["expected_error"] = r.want_error
                            ? Json(std::string(ErrorCodeName(*r.want_error)))
                            : Json(nullptr);
  return j.dump();
}

}  // namespace sama::harness
