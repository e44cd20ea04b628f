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


#ifndef SAMA_PROTOCOL_DEPLOYMENT_H_
#define SAMA_PROTOCOL_DEPLOYMENT_H_

// One complete, single-process deployment: a key authority, SP, CP and any
// number of data owners and requesters wired to one message bus. Key
// provisioning happens in-process at enrollment; everything after that goes
// over the bus.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sama/harness/bus.h"
#include "sama/protocol/roles.h"

namespace sama::protocol {

struct DeploymentConfig {
  int n_bits = 1024;
  std::uint64_t seed = 1;
  // Sizes the trapdoor pool: k = max(4, ceil(log2(max_data_owners + 1))).
  std::size_t max_data_owners = 15;
  std::vector<std::string> universe;
  cpabe::AbeOptions abe;
  DemaskMode demask = DemaskMode::kNegateInClear;
  bool allow_any_size = false;
};

struct AggregationRequest {
  RequestKind kind = RequestKind::kDoDo;
  // DO-DO: the requesting owner. DRs-*: the requester id.
  std::uint64_t requester = 0;
  // DO-DO and DRs-DO.
  vphe::UserId target = 0;
  IndexRange range;
  // DRs-DOs only; default is each owner's latest upload.
  std::optional<std::uint64_t> slot;
};

struct HandlerError {
  Endpoint at;
  std::uint16_t type = 0;
  std::uint64_t request_id = 0;
  ErrorCode code = ErrorCode::kProtocolState;
  std::string message;
};

struct RunResult {
  RequestOutcome outcome;
  std::vector<harness::TranscriptEntry> transcript;
};

class Deployment {
 public:
  explicit Deployment(DeploymentConfig config);

  const DeploymentConfig& config() const { return config_; }
  const BigInt& n() const { return ka_->params().n; }

  // Ids count up from 1.
  vphe::UserId AddDataOwner();
  std::uint64_t AddDataRequester(const cpabe::AttributeSet& attributes);

  // Sends the policy and waits for the acknowledgement; returns the version.
  std::uint64_t RegisterPolicy(vphe::UserId do_id, const cpabe::AccessTree& ap_s,
                               const cpabe::AccessTree& ap_m);
  void Upload(vphe::UserId do_id, const BigInt& m);

  // Queues the opening message and returns the request id.
  std::uint64_t Submit(const AggregationRequest& request);
  // Delivers one message; false when the bus is empty.
  bool Step();
  void RunUntilIdle();
  RunResult RunUseCase(const AggregationRequest& request);

  // Throws kInvalidArgument for an unknown id.
  const RequestOutcome& outcome(std::uint64_t request_id) const;

  KeyAuthority& key_authority() { return *ka_; }
  ServiceProvider& service_provider() { return *sp_; }
  ComputationalParty& computational_party() { return *cp_; }
  DataOwner& data_owner(vphe::UserId id);
  DataRequester& data_requester(std::uint64_t id);
  const std::map<vphe::UserId, std::unique_ptr<DataOwner>>& data_owners()
      const {
    return dos_;
  }
  MessageBus& bus() { return bus_; }
  const harness::Transcript& transcript() const { return bus_.transcript(); }
  TestHooks& hooks() { return hooks_; }
  const std::vector<HandlerError>& errors() const { return errors_; }

 private:
  Actor& ActorAt(const Endpoint& e);

  DeploymentConfig config_;
  MessageBus bus_;
  TestHooks hooks_;
  OutcomeMap outcomes_;
  std::unique_ptr<KeyAuthority> ka_;
  std::unique_ptr<ServiceProvider> sp_;
  std::unique_ptr<ComputationalParty> cp_;
  std::map<vphe::UserId, std::unique_ptr<DataOwner>> dos_;
  std::map<std::uint64_t, std::unique_ptr<DataRequester>> drs_;
  std::vector<HandlerError> errors_;
  std::uint64_t next_request_ = 1;
};

}  // namespace sama::protocol

#endif  // SAMA_PROTOCOL_DEPLOYMENT_H_
