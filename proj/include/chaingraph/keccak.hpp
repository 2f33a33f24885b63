#pragma once

#include "chaingraph/bytes.hpp"

namespace chaingraph {

/// Original Keccak-256 (pad10*1 with 0x01 domain byte), as used by Ethereum.
/// Not FIPS-202 SHA3-256.
Hash32 keccak256(ByteView data);
Hash32 keccak256(std::string_view text);

}  // namespace chaingraph
