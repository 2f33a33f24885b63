#!/usr/bin/env python3
"""Regenerates the fixture directories (homer/, legit/, four_function.hex).

Output is deterministic; the checked-in files are the output of this script.
"""

import hashlib
import json
import os
from datetime import datetime, timezone

HERE = os.path.dirname(os.path.abspath(__file__))

# Selectors are the first four bytes of keccak-256 of the signature.
SELECTORS = {
    "mintBanana()": "1ed8b6c0",
    "mintMonkey()": "541d2529",
    "mintZombie()": "c3fa7b57",
    "mintReaper(uint256)": "a844ad54",
    "mintChips()": "66e55902",
    "mint()": "1249c58b",
    "withdraw()": "3ccfd60b",
    "setPrice(uint256)": "91b7f5ed",
    "owner()": "8da5cb5b",
    "totalSupply()": "18160ddd",
    "name()": "06fdde03",
    "balanceOf(address)": "70a08231",
    "transfer(address,uint256)": "a9059cbb",
    "approve(address,uint256)": "095ea7b3",
    "deposit()": "d0e30db0",
    "store(uint256)": "6057361d",
    "retrieve()": "2e64cec1",
    "double(uint256)": "eee97206",
}

OPS = {
    "STOP": 0x00, "ADD": 0x01, "MUL": 0x02, "SHR": 0x1C, "ISZERO": 0x15, "EQ": 0x14,
    "CALLVALUE": 0x34, "CALLDATALOAD": 0x35, "POP": 0x50, "MSTORE": 0x52,
    "SLOAD": 0x54, "SSTORE": 0x55, "JUMP": 0x56, "JUMPI": 0x57, "JUMPDEST": 0x5B,
    "DUP1": 0x80, "RETURN": 0xF3, "REVERT": 0xFD,
}


def assemble(items):
    """items: opcode names, ("push", int, width), ("label", name), ("ref", name)."""
    def size(item):
        if isinstance(item, str):
            return 1
        if item[0] == "push":
            return 1 + item[2]
        if item[0] == "label":
            return 1
        if item[0] == "ref":
            return 3
        raise ValueError(item)

    labels, offset = {}, 0
    for item in items:
        if isinstance(item, tuple) and item[0] == "label":
            labels[item[1]] = offset
        offset += size(item)
    out = bytearray()
    for item in items:
        if isinstance(item, str):
            out.append(OPS[item])
        elif item[0] == "push":
            out.append(0x5F + item[2])
            out += item[1].to_bytes(item[2], "big")
        elif item[0] == "label":
            out.append(OPS["JUMPDEST"])
        elif item[0] == "ref":
            out.append(0x61)
            out += labels[item[1]].to_bytes(2, "big")
    return out.hex()


def guard(name):
    # Solidity-style non-payable check.
    return ["CALLVALUE", "DUP1", "ISZERO", ("ref", name + "_ok"), "JUMPI",
            ("push", 0, 1), "DUP1", "REVERT", ("label", name + "_ok"), "POP"]


BODIES = {
    # payable, no inputs, writes state
    "mint": lambda n: ["CALLVALUE", ("push", 0, 1), "SSTORE", "STOP"],
    # payable, one input
    "mint_arg": lambda n: [("push", 4, 1), "CALLDATALOAD", ("push", 0, 1), "SSTORE", "STOP"],
    # nonpayable, no inputs
    "write": lambda n: guard(n) + [("push", 0, 1), ("push", 1, 1), "SSTORE", "STOP"],
    # nonpayable, one input
    "write_arg": lambda n: guard(n) + [("push", 4, 1), "CALLDATALOAD", ("push", 1, 1), "SSTORE", "STOP"],
    # view with output
    "view": lambda n: guard(n) + [("push", 0, 1), "SLOAD", ("push", 0, 1), "MSTORE",
                                  ("push", 32, 1), ("push", 0, 1), "RETURN"],
    # pure with input and output
    "pure": lambda n: guard(n) + [("push", 4, 1), "CALLDATALOAD", "DUP1", "ADD", ("push", 0, 1), "MSTORE",
                                  ("push", 32, 1), ("push", 0, 1), "RETURN"],
}


def contract(functions):
    """functions: list of (signature, body kind)."""
    items = [("push", 0x80, 1), ("push", 0x40, 1), "MSTORE",
             ("push", 0, 1), "CALLDATALOAD", ("push", 0xE0, 1), "SHR"]
    for i, (sig, _) in enumerate(functions):
        items += ["DUP1", ("push", int(SELECTORS[sig], 16), 4), "EQ", ("ref", "f%d" % i), "JUMPI"]
    items += [("push", 0, 1), "DUP1", "REVERT"]
    for i, (_, kind) in enumerate(functions):
        items += [("label", "f%d" % i)] + BODIES[kind]("f%d" % i)
    return "0x" + assemble(items)


def abi_entry(sig, mutability, outputs=()):
    name, args = sig[:-1].split("(")
    inputs = [{"name": "", "type": t} for t in args.split(",") if t]
    return {"type": "function", "name": name, "inputs": inputs,
            "outputs": [{"name": "", "type": t} for t in outputs], "stateMutability": mutability}


def addr(label, prefix=""):
    h = hashlib.sha256(("address:" + label).encode()).hexdigest()[:40]
    return "0x" + (prefix + h[len(prefix):])


def txhash(label):
    return "0x" + hashlib.sha256(("tx:" + label).encode()).hexdigest()


def ts(text):
    return int(datetime.strptime(text, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=timezone.utc).timestamp())


def block_at(when):
    # Roughly 13 s blocks from a fixed origin.
    return 13360000 + (ts(when) - ts("2021-10-05T00:00:00Z")) // 13


ETH = 10 ** 18


class Chain:
    def __init__(self):
        self.lines = []

    def tx(self, label, when, sender, to=None, value=0, data="", created=None, internal=()):
        doc = {"hash": txhash(label), "block_number": block_at(when), "timestamp": ts(when), "from": sender}
        if to is not None:
            doc["to"] = to
        doc["value_wei"] = str(value)
        doc["input"] = "0x" + data
        if created is not None:
            doc["created_contract"] = created
        doc["internal_transfers"] = [{"from": f, "to": t, "value_wei": str(v)} for f, t, v in internal]
        self.lines.append(doc)

    def call(self, label, when, sender, to, sig, value=0, args="", proceeds_to=None):
        internal = [(to, proceeds_to, value)] if proceeds_to else []
        self.tx(label, when, sender, to, value, SELECTORS[sig] + args, internal=internal)


def write_jsonl(path, docs):
    with open(path, "w") as f:
        for d in docs:
            f.write(json.dumps(d, sort_keys=True) + "\n")


def write_json(path, doc):
    with open(path, "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def word(n):
    return "%064x" % n


NFT_VIEWS = [("withdraw()", "write"), ("setPrice(uint256)", "write_arg"), ("totalSupply()", "view")]


def homer():
    out = os.path.join(HERE, "homer")
    os.makedirs(os.path.join(out, "abi", "etherscan"), exist_ok=True)
    os.makedirs(os.path.join(out, "abi", "sourcify"), exist_ok=True)

    d = {i: addr("homer-deployer-%d" % i) for i in range(1, 6)}
    d[4] = addr("homer-deployer-4", "c8a6")  # Ether Reapers deployer
    c = {i: addr("homer-contract-%d" % i) for i in range(1, 6)}
    hop = addr("homer-intermediary")
    deposit = addr("homer-deposit")
    exchange = addr("exchange-hot-wallet")
    funder = addr("homer-initial-funding")
    bob = addr("bob")
    minters = [addr("minter-%d" % i) for i in range(1, 5)]

    projects = [
        # name, contract, launch, profit, mint signature, abi source
        ("Ether Bananas", 1, "2021-10-07", "125000", "mintBanana()", "etherscan"),
        ("Ether Monkeys", 2, "2021-10-11", "1770000", "mintMonkey()", "sourcify"),
        ("Zombie Monkeys", 3, "2021-10-15", "413000", "mintZombie()", "registry"),
        ("Ether Reapers", 4, "2021-10-20", "282000", "mintReaper(uint256)", "etherscan"),
        ("ETH Banana Chips", 5, "2021-11-23", "208000", "mintChips()", None),
    ]

    contracts = {}
    for name, i, launch, _, mint_sig, source in projects:
        kind = "mint_arg" if "(uint256)" in mint_sig else "mint"
        functions = [(mint_sig, kind)] + NFT_VIEWS
        abi = [abi_entry(mint_sig, "payable"), abi_entry("withdraw()", "nonpayable"),
               abi_entry("setPrice(uint256)", "nonpayable"), abi_entry("totalSupply()", "view", ["uint256"])]
        record = {"bytecode": contract(functions), "deployed_block": block_at(launch + "T08:00:00Z")}
        if source == "registry":
            record["abi"] = abi
        elif source is not None:
            write_json(os.path.join(out, "abi", source, c[i] + ".json"), abi)
        contracts[c[i]] = record
    write_json(os.path.join(out, "contracts.json"), contracts)

    chain = Chain()
    chain.tx("seed", "2021-10-05T09:00:00Z", funder, d[1], 4 * ETH)
    price = {1: ETH // 20, 2: ETH // 10, 3: ETH // 20, 4: ETH // 25, 5: ETH // 20}
    for name, i, launch, _, mint_sig, _ in projects:
        chain.tx("deploy-%d" % i, launch + "T08:00:00Z", d[i], None, 0,
                 contracts[c[i]]["bytecode"][2:], created=c[i])
        buyers = minters[:2] + ([bob] if i >= 4 else [minters[2 + i % 2]])
        # Ether Bananas to Ether Reapers pay their own deployer; ETH Banana
        # Chips pays the Ether Reapers deployer.
        recipient = d[4] if i == 5 else d[i]
        args = word(1) if "(uint256)" in mint_sig else ""
        for k, buyer in enumerate(buyers):
            chain.call("mint-%d-%d" % (i, k), launch + "T12:%02d:00Z" % k, buyer, c[i], mint_sig,
                       price[i], args, recipient)
        chain.call("withdraw-%d" % i, launch + "T20:00:00Z", d[i], c[i], "withdraw()")

    # Deployers fund their successors, once through an intermediary.
    chain.tx("fund-2", "2021-10-10T10:00:00Z", d[1], d[2], 2 * ETH)
    chain.tx("fund-3a", "2021-10-14T10:00:00Z", d[2], hop, 3 * ETH)
    chain.tx("fund-3b", "2021-10-14T10:05:00Z", hop, d[3], 3 * ETH)
    chain.tx("fund-4", "2021-10-19T10:00:00Z", d[3], d[4], 2 * ETH)
    chain.tx("fund-5", "2021-11-22T10:00:00Z", d[4], d[5], 2 * ETH)
    # Cash-out through one exchange deposit address.
    chain.tx("cashout-3", "2021-10-25T10:00:00Z", d[3], deposit, 10 * ETH)
    chain.tx("cashout-5", "2021-11-28T10:00:00Z", d[5], deposit, 20 * ETH)
    chain.tx("sweep", "2021-11-28T11:00:00Z", deposit, exchange, 30 * ETH)
    # Call with a selector nobody knows.
    chain.tx("probe", "2021-10-12T10:00:00Z", minters[0], c[1], 0, "deadbeef")
    # One line out of block order on purpose; replay sorts by block.
    chain.lines.sort(key=lambda t: (t["hash"] == txhash("probe"), t["block_number"]))
    write_jsonl(os.path.join(out, "chain.jsonl"), chain.lines)

    posts = [
        ("1446000000000000001", "Homer_eth", "2021-10-06T18:00:00Z",
         "Ether Bananas mint goes live tomorrow. Contract: %s" % c[1]),
        ("1447000000000000002", "Homer_eth", "2021-10-10T18:00:00Z",
         "Ether Monkeys minting now! Casino and DAO coming. %s" % c[2]),
        ("1448000000000000003", "Homer_eth", "2021-10-14T18:00:00Z",
         "Zombie Monkeys drop in 24h: %s" % c[3]),
        ("1450000000000000004", "Homer_eth", "2021-10-19T18:00:00Z",
         "Ether Reapers mint is open at %s" % c[4]),
        ("1463000000000000005", "Homer_eth", "2021-11-22T18:00:00Z",
         "Whitelist mint for ETH Banana Chips starts now: %s" % c[5].upper().replace("0X", "0x")),
        ("1451000000000000006", "bob_collects", "2021-10-21T09:00:00Z",
         "gm @Homer_eth, loving my Ether Reapers"),
        ("1452000000000000007", "Homer_eth", "2021-10-22T09:00:00Z", "gm"),
    ]
    write_jsonl(os.path.join(out, "social.jsonl"),
                [{"id": p, "author_username": a, "created_at": t, "text": x} for p, a, t, x in posts])

    write_jsonl(os.path.join(out, "attributions.jsonl"), [
        {"address": exchange, "label": "Exchange hot wallet", "tag": "exchange",
         "provenance": "public exchange label list"},
        {"address": bob, "label": "Bob", "tag": "known_entity", "provenance": "user report"},
    ])

    write_jsonl(os.path.join(out, "projects.jsonl"), [
        {"name": name, "contract": c[i], "launch_date": launch, "estimated_profit_usd": profit,
         "provenance": "rug pull incident report"}
        for name, i, launch, profit, _, _ in projects
    ])

    write_json(os.path.join(out, "enrichment.json"), {
        "Homer_eth": {
            "name": "Homer_eth",
            "description": "NFT creator behind a series of 2021 collections",
            "affiliations": ["Ether Bananas", "Ether Monkeys", "Zombie Monkeys", "Ether Reapers",
                             "ETH Banana Chips"],
            "links": ["https://x.com/Homer_eth"],
        }
    })

    with open(os.path.join(out, "signatures.txt"), "w") as f:
        f.write("# selector signature\n")
        for sig, sel in sorted(SELECTORS.items()):
            f.write("%s %s\n" % (sel, sig))

    with open(os.path.join(out, "project_names.txt"), "w") as f:
        f.write("# project names recognised in posts\n")
        for name, *_ in projects:
            f.write(name + "\n")

    return {"contracts": c, "deployers": d}


def legit():
    out = os.path.join(HERE, "legit")
    os.makedirs(out, exist_ok=True)
    dep = addr("legit-deployer")
    con = addr("legit-contract")
    treasury = addr("legit-treasury")
    minters = [addr("legit-minter-%d" % i) for i in range(1, 4)]
    code = contract([("mint()", "mint")] + NFT_VIEWS)
    write_json(os.path.join(out, "contracts.json"), {
        con: {"bytecode": code, "deployed_block": block_at("2021-10-10T09:00:00Z"),
              "abi": [abi_entry("mint()", "payable"), abi_entry("withdraw()", "nonpayable"),
                      abi_entry("setPrice(uint256)", "nonpayable"),
                      abi_entry("totalSupply()", "view", ["uint256"])]}
    })
    chain = Chain()
    chain.tx("legit-seed", "2021-10-09T09:00:00Z", treasury, dep, ETH)
    chain.tx("legit-deploy", "2021-10-10T09:00:00Z", dep, None, 0, code[2:], created=con)
    for k, m in enumerate(minters):
        chain.call("legit-mint-%d" % k, "2021-10-12T12:%02d:00Z" % k, m, con, "mint()", ETH // 50)
    chain.call("legit-setprice", "2021-10-13T12:00:00Z", dep, con, "setPrice(uint256)", 0, word(5))
    write_jsonl(os.path.join(out, "chain.jsonl"), chain.lines)
    write_jsonl(os.path.join(out, "social.jsonl"), [
        {"id": "1448500000000000001", "author_username": "pixel_gardens", "created_at": "2021-10-11T18:00:00Z",
         "text": "Pixel Gardens mint opens tomorrow, proceeds stay in the contract treasury: %s" % con},
    ])
    write_jsonl(os.path.join(out, "projects.jsonl"), [
        {"name": "Pixel Gardens", "contract": con, "launch_date": "2021-10-12", "estimated_profit_usd": "0",
         "provenance": "control project"},
    ])
    with open(os.path.join(out, "signatures.txt"), "w") as f:
        for sig in ("mint()", "withdraw()", "setPrice(uint256)", "totalSupply()"):
            f.write("%s %s\n" % (SELECTORS[sig], sig))
    return {"contract": con}


def four_function():
    code = contract([("deposit()", "mint"), ("store(uint256)", "write_arg"),
                     ("retrieve()", "view"), ("double(uint256)", "pure")])
    with open(os.path.join(HERE, "four_function.hex"), "w") as f:
        f.write(code + "\n")


if __name__ == "__main__":
    h = homer()
    l = legit()
    four_function()
    print("ETH Banana Chips contract:", h["contracts"][5])
    print("Ether Reapers deployer:", h["deployers"][4])
    print("control contract:", l["contract"])
