#pragma once
// Generated by tests/oracle/gen_vectors.py; do not edit.

namespace oracle {
inline constexpr const char* g2 = R"(02c6047f9441ed7d6d3045406e95c07cd85c778e4b8cef3ca7abac09b95c709ee5)";
inline constexpr const char* g3 = R"(02f9308a019258c31049344f85f89d5229b531c845836f99b08601f113bce036f9)";
inline constexpr const char* g_deadbeef = R"(0276d2fdf1302d1fa9556f4df94ec84cefba6d482e54f47c6c2a238c1baa560f0e)";
inline constexpr const char* g_nminus1 = R"(0379be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798)";
inline constexpr const char* g_big = R"(03ccee6c480e1ad56d2e487419e6f99dc228d5f9b0671510f47e9cd654edc3f4be)";
inline constexpr const char* k_big = R"(3c1a2b77e0f5d4c3b2a1908f7e6d5c4b3a29180f7e6d5c4b3a2918f7e6d5c4b3)";
inline constexpr const char* ripemd_abc = R"(8eb208f7e05d987a9b044a8e98c6b087f15a0bfc)";
inline constexpr const char* hash160_g = R"(751e76e8199196d454941c45d1b3a323f1433bd6)";
inline constexpr const char* hs_empty = R"(e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855)";
inline constexpr const char* hs_savings1 = R"(6b1cafcd4902875730bdf9dcfbf621e701b561042bbd9bd50cb5db15e09369bc)";
inline constexpr const char* add_priv = R"(6b1cafcd4902875730bdf9dcfbf621e701b561042bbd9bd50cb5db15e09369c3)";
inline constexpr const char* add_pub = R"(0255b937e6705b6d2d1ac1401449ba804fc6f3c55013b1d368262c7893c773fbb0)";
inline constexpr const char* mul_priv = R"(edc8ce9cff11b3625531d50ae3baed539697ed4fd39e025bd954407f839b61a2)";
inline constexpr const char* mul_pub = R"(031698c4655e94393f133bc89947c4f4a34ab4b108f6a8ecffa6c123449e3a2372)";
inline constexpr const char* add_addr = R"(078c225034774d467db818956a86eaf46e231728)";
inline constexpr const char* script_hex = R"(522103774ae7f858a9411e5ef4246b70c65aac5649980be5c17891bbec17895da008cb2103f28773c2d975288bc7d1d205c3748651b075fbc6610e58cddeeddf8f19405aa852ae)";
inline constexpr const char* script_p2sh = R"(6f9681d824cd21a732bbc76d01c5b519c40d1cb4)";
inline constexpr const char* dscript_hex = R"(5221034a92c5ddc5f356370f76e7291865de07b6d345459812603bcbcbea9e45808534210294daf65f743a25f18f11b6e75d03837d430358b45b089a300eaa0b2ea914b7b252ae)";
inline constexpr const char* dscript_p2sh = R"(bd35c7b9c82ef7a1d99f748d6a3d053f86216ed6)";
inline constexpr const char* leaf_price = R"(615d48e2af616dfadfab13e85417828339ff3f93f9353e3cdb57aa17c0fd2b21)";
inline constexpr const char* order_digest = R"(1294b7f98db64b16a6ea93bb5bd7bd807476263096381bf7a5ad2675fe362eda)";
inline constexpr const char* contract_hash = R"(f97b9c6f72b6d5cfa4023e486baa037206a30326f87fbca743f9d0120b452d80)";
inline constexpr const char* payment_addr = R"(f7f9e59430a0607d73dfc8d7f3c170dfa9470187)";
inline constexpr const char* payment_secret = R"(b55006a444178f46c223f0c21327c29b2b978500e1cc3d21c332416c0bd21cd5)";
inline constexpr const char* order_canonical = R"({"children":{"item":{"encrypted":false,"kind":"leaf","salt":"04040404040404040404040404040404","value":"776964676574"},"price":{"encrypted":false,"kind":"leaf","salt":"05050505050505050505050505050505","value":"35303030"}},"kind":"branch","salt":"03030303030303030303030303030303"})";
inline constexpr const char* sig_1_satoshi = R"(934b1ea10a4b3c1757e2b0c017d0b6143ce3c9a7e6a4a49860d7a6ab210ee3d82442ce9d2b916064108014783e923ec36b49743e2ffa1c4496f01a512aafd9e5)";
inline constexpr const char* sig_big_hello = R"(af988b5f8a94cde7ce5f53aeb00b991267390d6e0a13c0561e98c3379f03c35f61ee8a4018dbe0afdde63df1e6f75d79b031a4e3b227dc3c61674c68b38884bd)";
inline constexpr const char* signal_value = R"(d7924d4f7d43ea965a465ae3095ff41131e5946f3c85f79e44adbcf8e27e080e)";
inline constexpr const char* signal_addr_merchant = R"(6d71b5cc6cd2fa27cdff7b72b20dd49a2c46c010)";
inline constexpr const char* signal_addr_customer = R"(d55405f8e520fc6878e66b39e370ee3f10907c02)";
inline constexpr const char* redeem_key = R"(dd6a73ed4a28f014e1d68cfe3e68fa2690de275bbb46fe365e4a62a6cb341d85)";
inline constexpr const char* redeem_file = R"(effd164322d4ee2f10a7ba34919619a12aec135e8db8e4b4912d8e927cdd9ced)";
inline constexpr const char* dleq_v = R"(e79f189ac7571eea3058a6b68b4b6bff381be6ecdc3f54c71c0efc16137acba4)";
inline constexpr const char* dleq_resp = R"(b6dd49d056055cbe9109f423a1e2440032f5faf9362cbdddd48837289a03f29e)";
inline constexpr const char* coinbase_txid = R"(f37c793a75b823a79cd18448f919f333379481cea9dc6186f4993f430bdf8103)";
inline constexpr const char* seeded42_block0 = R"(d03734e2db24738a809b52fd5aae0a40bc03f9427ded29292a59ec87c5f93835)";
}  // namespace oracle
