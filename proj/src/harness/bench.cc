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


#include "sama/harness/bench.h"

#include <map>
#include <utility>

#include "sama/common/errors.h"
#include "sama/cpabe/policy.h"

namespace sama::harness {
namespace {

using protocol::AggregationRequest;
using protocol::Deployment;
using protocol::DeploymentConfig;
using protocol::IndexRange;

constexpr int kDataBits = 32;

struct Traffic {
  std::uint64_t in = 0;
  std::uint64_t out = 0;
};

std::uint64_t PayloadBits(const TranscriptEntry& e) {
  return e.bits() - e.SectionBits(WireSection::kFraming);
}

// Per-role payload bits for one request; links to KA are left out.
std::map<Role, Traffic> RequestTraffic(const Transcript& t,
                                       std::uint64_t request_id) {
  std::map<Role, Traffic> out;
  for (const auto& e : t.entries()) {
    if (e.request_id != request_id) continue;
    if (e.sender.role == Role::kKeyAuthority ||
        e.receiver.role == Role::kKeyAuthority) {
      continue;
    }
    out[e.sender.role].out += PayloadBits(e);
    out[e.receiver.role].in += PayloadBits(e);
  }
  return out;
}

struct Snapshot {
  OpCounts sp, cp, dr, owner;
  double sp_ms = 0, cp_ms = 0, dr_ms = 0, owner_ms = 0;
};

}  // namespace

RequestKind ParseUseCase(std::string_view text) {
  if (text == "do-do") return RequestKind::kDoDo;
  if (text == "drs-do") return RequestKind::kDrsDo;
  if (text == "drs-dos") return RequestKind::kDrsDos;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown use case '" + std::string(text) + "'");
}

std::vector<std::string> BenchUniverse(std::size_t attrs) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < attrs; ++i) out.push_back("a" + std::to_string(i));
  return out;
}

BenchResult RunBench(const BenchConfig& config) {
  if (config.count == 0 || config.attrs == 0 || config.repeats < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "count, attrs and repeats must be positive");
  }
  const bool multi = config.use_case == RequestKind::kDrsDos;
  const std::uint64_t owners = multi ? config.count : 1;
  const std::uint64_t per_owner = multi ? 1 : config.count;

  DeploymentConfig dc;
  dc.n_bits = config.n_bits;
  dc.seed = config.seed;
  dc.max_data_owners = owners;
  dc.universe = BenchUniverse(config.attrs);
  dc.abe = config.abe;
  dc.allow_any_size = config.allow_any_size;
  Deployment d(dc);

  std::vector<cpabe::PolicyNode> leaves;
  for (const auto& a : dc.universe) leaves.push_back(cpabe::Leaf(a));
  const cpabe::AccessTree policy(leaves.size() == 1
                                     ? leaves.front()
                                     : cpabe::And(std::move(leaves)));
  const cpabe::AttributeSet attrs(dc.universe.begin(), dc.universe.end());

  Rng data = Rng::Derive(config.seed, "bench/data");
  BigInt expected = 0;
  std::vector<vphe::UserId> ids;
  for (std::uint64_t i = 0; i < owners; ++i) {
    const vphe::UserId id = d.AddDataOwner();
    d.RegisterPolicy(id, policy, policy);
    for (std::uint64_t j = 0; j < per_owner; ++j) {
      const BigInt m = data.Bits(kDataBits);
      d.Upload(id, m);
      expected += m;
    }
    ids.push_back(id);
  }
  const std::uint64_t dr =
      config.use_case == RequestKind::kDoDo ? 0 : d.AddDataRequester(attrs);

  AggregationRequest req;
  req.kind = config.use_case;
  req.requester = config.use_case == RequestKind::kDoDo ? ids[0] : dr;
  req.target = ids[0];
  req.range = IndexRange{0, per_owner};

  const auto snap = [&] {
    Snapshot s;
    s.sp = d.service_provider().ops();
    s.sp_ms = d.service_provider().busy_ms();
    s.cp = d.computational_party().ops();
    s.cp_ms = d.computational_party().busy_ms();
    if (dr != 0) {
      s.dr = d.data_requester(dr).ops();
      s.dr_ms = d.data_requester(dr).busy_ms();
    }
    s.owner = d.data_owner(ids[0]).ops();
    s.owner_ms = d.data_owner(ids[0]).busy_ms();
    return s;
  };

  BenchResult result;
  std::optional<Snapshot> first_delta;
  Snapshot total_ms;
  std::map<Role, Traffic> traffic;
  for (int rep = 0; rep < config.repeats; ++rep) {
    const Snapshot before = snap();
    const protocol::RunResult run = d.RunUseCase(req);
    const Snapshot after = snap();
    if (run.outcome.error || !run.outcome.value ||
        *run.outcome.value != expected) {
      throw Error(ErrorCode::kProtocolState,
                  "bench request failed: " + run.outcome.message);
    }
    Snapshot delta;
    delta.sp = after.sp - before.sp;
    delta.cp = after.cp - before.cp;
    delta.dr = after.dr - before.dr;
    delta.owner = after.owner - before.owner;
    const auto sample = [&](const char* role, double a, double b) {
      if (config.record_time) result.samples_ms[role].push_back(a - b);
    };
    sample("SP", after.sp_ms, before.sp_ms);
    if (config.use_case == RequestKind::kDoDo) {
      sample("DO*", after.owner_ms, before.owner_ms);
    } else {
      sample("CP", after.cp_ms, before.cp_ms);
      sample("DR", after.dr_ms, before.dr_ms);
    }
    total_ms.sp_ms += after.sp_ms - before.sp_ms;
    total_ms.cp_ms += after.cp_ms - before.cp_ms;
    total_ms.dr_ms += after.dr_ms - before.dr_ms;
    total_ms.owner_ms += after.owner_ms - before.owner_ms;
    if (!first_delta) {
      first_delta = delta;
      result.first_request = run.outcome.request_id;
      traffic = RequestTraffic(d.transcript(), run.outcome.request_id);
    } else if (delta.sp != first_delta->sp || delta.cp != first_delta->cp ||
               delta.dr != first_delta->dr ||
               delta.owner != first_delta->owner) {
      throw Error(ErrorCode::kProtocolState,
                  "operation counts differ across repeats");
    }
  }

  const double reps = config.repeats;
  const std::string uc(protocol::RequestKindName(config.use_case));
  const auto row = [&](std::string role, const OpCounts& ops, Traffic t,
                       double ms) {
    result.rows.push_back({uc, std::move(role), config.n_bits, config.count,
                           config.attrs, ops, t.in, t.out,
                           config.record_time ? ms : 0.0});
  };

  // Upload cost: all messages for one owner, or one owner's single message.
  const protocol::DataOwner& first_owner = d.data_owner(ids[0]);
  Traffic upload;
  for (const auto& e : d.transcript().entries()) {
    if (e.type == static_cast<std::uint16_t>(protocol::MessageType::kDataUpload) &&
        e.sender.instance == ids[0]) {
      upload.out += PayloadBits(e);
    }
  }
  double upload_ms = 0;
  for (vphe::UserId id : ids) upload_ms += d.data_owner(id).upload_ms();
  row("DO", first_owner.upload_ops(), upload,
      upload_ms / static_cast<double>(ids.size()));

  switch (config.use_case) {
    case RequestKind::kDoDo:
      row("DO*", first_delta->owner, traffic[Role::kDataOwner],
          total_ms.owner_ms / reps);
      row("SP", first_delta->sp, traffic[Role::kServiceProvider],
          total_ms.sp_ms / reps);
      break;
    case RequestKind::kDrsDo:
    case RequestKind::kDrsDos:
      row("SP", first_delta->sp, traffic[Role::kServiceProvider],
          total_ms.sp_ms / reps);
      row("CP", first_delta->cp, traffic[Role::kComputationalParty],
          total_ms.cp_ms / reps);
      row("DR", first_delta->dr, traffic[Role::kDataRequester],
          total_ms.dr_ms / reps);
      break;
  }
  result.leaf_count = policy.LeafCount();
  result.leaf_component_bits =
      d.key_authority().abe_pk().LeafComponentBits();
  result.transcript = d.transcript();
  return result;
}

}  // namespace sama::harness
