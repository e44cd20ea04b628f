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


#include "sama/protocol/deployment.h"

#include <chrono>
#include <cmath>
#include <utility>

#include "sama/common/errors.h"

namespace sama::protocol {
namespace {

std::size_t PoolSize(std::size_t max_owners) {
  std::size_t k = 0;
  while ((std::uint64_t{1} << k) < max_owners + 1) ++k;
  return std::max<std::size_t>(4, k);
}

std::string IdLabel(std::string_view prefix, std::uint64_t id) {
  return std::string(prefix) + "/" + std::to_string(id);
}

}  // namespace

Deployment::Deployment(DeploymentConfig config) : config_(std::move(config)) {
  Rng setup = Rng::Derive(config_.seed, "setup");
  vphe::SetupOptions vopts;
  vopts.allow_any_size = config_.allow_any_size;
  // Result keys need room above n (see DemaskMode), so n is kept below
  // 2^bits - 2^(bits-3); about one system in eight is drawn again.
  const BigInt ceiling = (BigInt(1) << config_.n_bits) -
                         (BigInt(1) << (config_.n_bits - 3));
  std::optional<vphe::System> drawn;
  for (int attempt = 0; attempt < 64 && !drawn; ++attempt) {
    vphe::System s = vphe::SystemSetup(
        config_.n_bits, static_cast<int>(PoolSize(config_.max_data_owners)),
        setup, vopts);
    if (s.params.n < ceiling) drawn = std::move(s);
  }
  if (!drawn) {
    throw Error(ErrorCode::kSearchExhausted, "no system modulus below ceiling");
  }
  vphe::System system = std::move(*drawn);
  cpabe::AbeSetupResult abe =
      cpabe::Setup(config_.universe, setup, nullptr, config_.abe);
  const BigInt n = system.params.n;
  const vphe::StrongKey ssk = system.strong;
  const cpabe::AbePublicParams abe_pk = abe.pk;

  ka_ = std::make_unique<KeyAuthority>(
      std::move(system), PoolSize(config_.max_data_owners), std::move(abe),
      config_.n_bits, Rng::Derive(config_.seed, "ka"));
  sp_ = std::make_unique<ServiceProvider>(n, abe_pk, config_.demask, &hooks_,
                                          Rng::Derive(config_.seed, "sp"));
  cp_ = std::make_unique<ComputationalParty>(ssk, abe_pk, config_.n_bits,
                                             Rng::Derive(config_.seed, "cp"));
  bus_.Register(ka_->endpoint());
  bus_.Register(sp_->endpoint());
  bus_.Register(cp_->endpoint());
}

vphe::UserId Deployment::AddDataOwner() {
  const vphe::UserId id = dos_.size() + 1;
  vphe::UserKeyPair keys = ka_->EnrollDataOwner(id);
  sp_->EnrollDataOwner(keys.public_key);
  cp_->EnrollDataOwner(keys.public_key);
  auto owner = std::make_unique<DataOwner>(
      std::move(keys), &outcomes_, Rng::Derive(config_.seed, IdLabel("do", id)));
  bus_.Register(owner->endpoint());
  dos_.emplace(id, std::move(owner));
  return id;
}

std::uint64_t Deployment::AddDataRequester(
    const cpabe::AttributeSet& attributes) {
  const std::uint64_t id = drs_.size() + 1;
  auto requester = std::make_unique<DataRequester>(
      id, ka_->IssueAbeKey(IdLabel("dr", id), attributes), ka_->abe_pk(), n(),
      &outcomes_);
  bus_.Register(requester->endpoint());
  drs_.emplace(id, std::move(requester));
  return id;
}

DataOwner& Deployment::data_owner(vphe::UserId id) {
  auto it = dos_.find(id);
  if (it == dos_.end()) {
    throw Error(ErrorCode::kUnknownDataOwner,
                "no data owner " + std::to_string(id));
  }
  return *it->second;
}

DataRequester& Deployment::data_requester(std::uint64_t id) {
  auto it = drs_.find(id);
  if (it == drs_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no data requester " + std::to_string(id));
  }
  return *it->second;
}

std::uint64_t Deployment::RegisterPolicy(vphe::UserId do_id,
                                         const cpabe::AccessTree& ap_s,
                                         const cpabe::AccessTree& ap_m) {
  for (const auto& tree : {ap_s, ap_m}) {
    for (const std::string& a : tree.Attributes()) {
      if (!ka_->abe_pk().attribute_points.count(a)) {
        throw Error(ErrorCode::kUnknownAttribute,
                    "attribute '" + a + "' is outside the universe");
      }
    }
  }
  DataOwner& owner = data_owner(do_id);
  const std::size_t before = errors_.size();
  owner.SendPolicy(bus_, ap_s, ap_m);
  RunUntilIdle();
  if (errors_.size() != before) {
    const HandlerError& e = errors_.back();
    throw Error(e.code, e.message);
  }
  return owner.policy_version();
}

void Deployment::Upload(vphe::UserId do_id, const BigInt& m) {
  data_owner(do_id).Upload(bus_, m);
  RunUntilIdle();
}

std::uint64_t Deployment::Submit(const AggregationRequest& request) {
  const std::uint64_t id = next_request_++;
  switch (request.kind) {
    case RequestKind::kDoDo:
      data_owner(request.requester).RequestAggregate(bus_, id, request.range);
      break;
    case RequestKind::kDrsDo:
      data_requester(request.requester)
          .RequestSingle(bus_, id, request.target, request.range);
      break;
    case RequestKind::kDrsDos:
      data_requester(request.requester).RequestMulti(bus_, id, request.slot);
      break;
  }
  return id;
}

Actor& Deployment::ActorAt(const Endpoint& e) {
  switch (e.role) {
    case Role::kKeyAuthority: return *ka_;
    case Role::kServiceProvider: return *sp_;
    case Role::kComputationalParty: return *cp_;
    case Role::kDataOwner: return data_owner(e.instance);
    case Role::kDataRequester: return data_requester(e.instance);
  }
  throw Error(ErrorCode::kUnknownEndpoint, harness::EndpointName(e));
}

bool Deployment::Step() {
  std::optional<Message> m = bus_.Next();
  if (!m) return false;
  Actor& actor = ActorAt(m->receiver);
  const auto start = std::chrono::steady_clock::now();
  try {
    actor.Handle(*m, bus_);
  } catch (const Error& e) {
    errors_.push_back({m->receiver, m->type, m->request_id, e.code(),
                       e.what()});
    auto it = outcomes_.find(m->request_id);
    if (m->request_id != 0 && it != outcomes_.end() && !it->second.done) {
      it->second.done = true;
      it->second.error = e.code();
      it->second.message = e.what();
    }
  }
  actor.AddBusy(std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count());
  return true;
}

void Deployment::RunUntilIdle() {
  while (Step()) {
  }
}

RunResult Deployment::RunUseCase(const AggregationRequest& request) {
  const std::uint64_t id = Submit(request);
  RunUntilIdle();
  return {outcome(id), bus_.transcript().ForRequest(id)};
}

const RequestOutcome& Deployment::outcome(std::uint64_t request_id) const {
  auto it = outcomes_.find(request_id);
  if (it == outcomes_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no request " + std::to_string(request_id));
  }
  return it->second;
}

}  // namespace sama::protocol
