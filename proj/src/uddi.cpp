#include "disco/uddi.hpp"

namespace disco::uddi {

namespace {

xml::Element message_root(std::string name) {
  xml::Element el;
  el.name = std::move(name);
  el.set_attr("generic", std::string(kGeneric));
  return el;
}

void finish_root(xml::Element& el) {
  el.set_attr("xmlns", std::string(kNamespace));
}

void add_name(xml::Element& parent, const std::string& name, const std::string& lang) {
  auto& n = parent.add_child("name");
  if (!lang.empty()) n.set_attr("xml:lang", lang);
  n.set_text(name);
}

void add_qualifiers(xml::Element& parent, const std::vector<std::string>& qualifiers) {
  auto& fq = parent.add_child("findQualifiers");
  for (const auto& q : qualifiers) fq.add_child("findQualifier").set_text(q);
}

xml::Element encode_service_record(const ServiceRecord& s) {
  xml::Element el;
  el.name = "serviceInfo";
  el.set_attr("businessKey", s.business_key);
  el.set_attr("serviceKey", s.service_key);
  add_name(el, s.name, s.lang);
  el.add_child("businessName").set_text(s.business_name);
  el.add_child("category").set_text(s.category);
  return el;
}

// Decode helpers ------------------------------------------------------------

const xml::Element& checked_root(const xml::Element& root) {
  const std::string* ns = root.attr("xmlns");
  if (ns == nullptr || *ns != kNamespace)
    throw ProtocolError("document is not in the " + std::string(kNamespace) +
                        " namespace");
  return root;
}

std::string attr_or(const xml::Element& el, std::string_view name, std::string fallback) {
  const std::string* v = el.attr(name);
  return v ? *v : std::move(fallback);
}

std::string required_attr(const xml::Element& el, std::string_view name) {
  const std::string* v = el.attr(name);
  if (v == nullptr || v->empty())
    throw ValidationError("<" + el.name + "> is missing attribute '" +
                          std::string(name) + "'");
  return *v;
}

struct NamedText {
  std::string text;
  std::string lang;
};

NamedText required_name(const xml::Element& el) {
  const xml::Element* n = el.child("name");
  if (n == nullptr) throw ValidationError("<" + el.name + "> is missing <name>");
  if (n->text.empty()) throw ValidationError("<" + el.name + "> has an empty <name>");
  return {n->text, attr_or(*n, "xml:lang", "en")};
}

std::string required_key(const xml::Element& el, std::string_view child_name) {
  const xml::Element* k = el.child(child_name);
  if (k == nullptr || k->text.empty())
    throw ValidationError("<" + el.name + "> is missing <" + std::string(child_name) + ">");
  return k->text;
}

std::vector<std::string> decode_qualifiers(const xml::Element& root) {
  std::vector<std::string> out;
  if (const xml::Element* fq = root.child("findQualifiers")) {
    for (const xml::Element* q : fq->children_named("findQualifier"))
      out.push_back(q->text);
  }
  return out;
}

bool decode_truncated(const xml::Element& root) {
  return attr_or(root, "truncated", "false") == "true";
}

ServiceInfo decode_service_info(const xml::Element& el) {
  ServiceInfo s;
  s.business_key = required_attr(el, "businessKey");
  s.service_key = required_attr(el, "serviceKey");
  NamedText n = required_name(el);
  s.name = n.text;
  s.lang = n.lang;
  return s;
}

ServiceRecord decode_service_record(const xml::Element& el) {
  ServiceRecord s;
  s.business_key = required_attr(el, "businessKey");
  s.service_key = required_attr(el, "serviceKey");
  NamedText n = required_name(el);
  s.name = n.text;
  s.lang = n.lang;
  if (const xml::Element* bn = el.child("businessName")) s.business_name = bn->text;
  if (const xml::Element* c = el.child("category"); c != nullptr && !c->text.empty())
    s.category = c->text;
  return s;
}

FindBusinessRequest decode_find_business_el(const xml::Element& root) {
  FindBusinessRequest req;
  req.generic = attr_or(root, "generic", "");
  if (req.generic != kGeneric)
    throw ValidationError("unsupported generic '" + req.generic + "'");
  NamedText n = required_name(root);
  req.name = n.text;
  req.qualifiers = decode_qualifiers(root);
  return req;
}

FindServiceRequest decode_find_service_el(const xml::Element& root) {
  FindServiceRequest req;
  req.generic = attr_or(root, "generic", "");
  if (req.generic != kGeneric)
    throw ValidationError("unsupported generic '" + req.generic + "'");
  NamedText n = required_name(root);
  req.name = n.text;
  req.qualifiers = decode_qualifiers(root);
  if (const xml::Element* c = root.child("category"); c != nullptr && !c->text.empty())
    req.category = c->text;
  return req;
}

BusinessListResponse decode_business_list_el(const xml::Element& root) {
  BusinessListResponse resp;
  resp.generic = attr_or(root, "generic", std::string(kGeneric));
  resp.operator_id = attr_or(root, "operator", "");
  resp.truncated = decode_truncated(root);
  const xml::Element* infos = root.child("businessInfos");
  if (infos == nullptr)
    throw ValidationError("<businessList> is missing <businessInfos>");
  for (const xml::Element* bi : infos->children_named("businessInfo")) {
    BusinessInfo b;
    b.business_key = required_attr(*bi, "businessKey");
    NamedText n = required_name(*bi);
    b.name = n.text;
    b.lang = n.lang;
    if (const xml::Element* sis = bi->child("serviceInfos")) {
      for (const xml::Element* si : sis->children_named("serviceInfo"))
        b.services.push_back(decode_service_info(*si));
    }
    resp.businesses.push_back(std::move(b));
  }
  return resp;
}

ServiceListResponse decode_service_list_el(const xml::Element& root) {
  ServiceListResponse resp;
  resp.generic = attr_or(root, "generic", std::string(kGeneric));
  resp.operator_id = attr_or(root, "operator", "");
  resp.truncated = decode_truncated(root);
  const xml::Element* infos = root.child("serviceInfos");
  if (infos == nullptr) throw ValidationError("<serviceList> is missing <serviceInfos>");
  for (const xml::Element* si : infos->children_named("serviceInfo"))
    resp.services.push_back(decode_service_record(*si));
  return resp;
}

BusinessDetailResponse decode_business_detail_el(const xml::Element& root) {
  BusinessDetailResponse resp;
  resp.generic = attr_or(root, "generic", std::string(kGeneric));
  resp.operator_id = attr_or(root, "operator", "");
  const xml::Element* be = root.child("businessEntity");
  if (be == nullptr)
    throw ValidationError("<businessDetail> is missing <businessEntity>");
  resp.business_key = required_attr(*be, "businessKey");
  NamedText n = required_name(*be);
  resp.name = n.text;
  resp.lang = n.lang;
  return resp;
}

ServiceDetailResponse decode_service_detail_el(const xml::Element& root) {
  ServiceDetailResponse resp;
  resp.generic = attr_or(root, "generic", std::string(kGeneric));
  resp.operator_id = attr_or(root, "operator", "");
  const xml::Element* si = root.child("serviceInfo");
  if (si == nullptr) throw ValidationError("<serviceDetail> is missing <serviceInfo>");
  resp.service = decode_service_record(*si);
  return resp;
}

SaveBusinessRequest decode_save_business_el(const xml::Element& root) {
  SaveBusinessRequest req;
  req.generic = attr_or(root, "generic", std::string(kGeneric));
  NamedText n = required_name(root);
  req.name = n.text;
  req.lang = n.lang;
  return req;
}

SaveServiceRequest decode_save_service_el(const xml::Element& root) {
  SaveServiceRequest req;
  req.generic = attr_or(root, "generic", std::string(kGeneric));
  req.business_key = required_attr(root, "businessKey");
  if (const std::string* sk = root.attr("serviceKey"); sk != nullptr && !sk->empty())
    req.service_key = *sk;
  NamedText n = required_name(root);
  req.name = n.text;
  req.lang = n.lang;
  if (const xml::Element* c = root.child("category"); c != nullptr && !c->text.empty())
    req.category = c->text;
  return req;
}

std::variant<SuccessReport, DispositionReport> decode_report_el(const xml::Element& root) {
  const xml::Element* result = root.child("result");
  if (result == nullptr)
    throw ValidationError("<dispositionReport> is missing <result>");
  std::string err = attr_or(*result, "errno", "");
  const xml::Element* info = result->child("errInfo");
  std::string message = info ? info->text : "";
  if (err == "0") return SuccessReport{message.empty() ? "ok" : message};
  std::string code = info ? attr_or(*info, "errCode", "") : "";
  DispositionReport report;
  report.message = message;
  if (code == "E_invalidKeyPassed") {
    report.code = ErrCode::invalid_key_passed;
  } else if (code == "E_nameTooShort") {
    report.code = ErrCode::name_too_short;
  } else if (code == "E_fatalError") {
    report.code = ErrCode::fatal_error;
  } else {
    throw ValidationError("unknown errCode '" + code + "'");
  }
  return report;
}

std::string encode_report(std::string_view errno_value, std::string_view err_code,
                          std::string_view message, std::string_view operator_id) {
  xml::Element root = message_root("dispositionReport");
  root.set_attr("operator", std::string(operator_id));
  finish_root(root);
  auto& result = root.add_child("result");
  result.set_attr("errno", std::string(errno_value));
  auto& info = result.add_child("errInfo");
  if (!err_code.empty()) info.set_attr("errCode", std::string(err_code));
  info.set_text(std::string(message));
  return xml::serialize(root);
}

}  // namespace

std::string_view err_code_name(ErrCode c) {
  switch (c) {
    case ErrCode::invalid_key_passed: return "E_invalidKeyPassed";
    case ErrCode::name_too_short: return "E_nameTooShort";
    case ErrCode::fatal_error: break;
  }
  return "E_fatalError";
}

int err_code_errno(ErrCode c) {
  // UDDI v2 result codes.
  switch (c) {
    case ErrCode::invalid_key_passed: return 10210;
    case ErrCode::name_too_short: return 10020;
    case ErrCode::fatal_error: break;
  }
  return 10500;
}

std::string encode_find_business(const FindBusinessRequest& req) {
  if (req.name.empty()) throw ValidationError("find_business requires a non-empty name");
  xml::Element root = message_root("find_business");
  finish_root(root);
  add_qualifiers(root, req.qualifiers);
  root.add_child("name").set_text(req.name);
  return xml::serialize(root);
}

std::string encode_find_service(const FindServiceRequest& req) {
  if (req.name.empty()) throw ValidationError("find_service requires a non-empty name");
  xml::Element root = message_root("find_service");
  finish_root(root);
  add_qualifiers(root, req.qualifiers);
  root.add_child("name").set_text(req.name);
  if (req.category) root.add_child("category").set_text(*req.category);
  return xml::serialize(root);
}

std::string encode_save_business(const SaveBusinessRequest& req) {
  if (req.name.empty()) throw ValidationError("save_business requires a non-empty name");
  xml::Element root = message_root("save_business");
  finish_root(root);
  add_name(root, req.name, req.lang);
  return xml::serialize(root);
}

std::string encode_save_service(const SaveServiceRequest& req) {
  if (req.name.empty()) throw ValidationError("save_service requires a non-empty name");
  if (req.business_key.empty())
    throw ValidationError("save_service requires a businessKey");
  xml::Element root = message_root("save_service");
  root.set_attr("businessKey", req.business_key);
  if (req.service_key) root.set_attr("serviceKey", *req.service_key);
  finish_root(root);
  add_name(root, req.name, req.lang);
  root.add_child("category").set_text(req.category);
  return xml::serialize(root);
}

std::string encode_delete_business(const DeleteBusinessRequest& req) {
  if (req.business_key.empty())
    throw ValidationError("delete_business requires a businessKey");
  xml::Element root = message_root("delete_business");
  finish_root(root);
  root.add_child("businessKey").set_text(req.business_key);
  return xml::serialize(root);
}

std::string encode_delete_service(const DeleteServiceRequest& req) {
  if (req.service_key.empty())
    throw ValidationError("delete_service requires a serviceKey");
  xml::Element root = message_root("delete_service");
  finish_root(root);
  root.add_child("serviceKey").set_text(req.service_key);
  return xml::serialize(root);
}

std::string encode_business_list(const BusinessListResponse& resp) {
  xml::Element root = message_root("businessList");
  root.set_attr("operator", resp.operator_id);
  root.set_attr("truncated", resp.truncated ? "true" : "false");
  finish_root(root);
  auto& infos = root.add_child("businessInfos");
  for (const BusinessInfo& b : resp.businesses) {
    auto& bi = infos.add_child("businessInfo");
    bi.set_attr("businessKey", b.business_key);
    add_name(bi, b.name, b.lang);
    auto& sis = bi.add_child("serviceInfos");
    for (const ServiceInfo& s : b.services) {
      auto& si = sis.add_child("serviceInfo");
      si.set_attr("businessKey", s.business_key);
      si.set_attr("serviceKey", s.service_key);
      add_name(si, s.name, s.lang);
    }
  }
  return xml::serialize(root);
}

std::string encode_service_list(const ServiceListResponse& resp) {
  xml::Element root = message_root("serviceList");
  root.set_attr("operator", resp.operator_id);
  root.set_attr("truncated", resp.truncated ? "true" : "false");
  finish_root(root);
  auto& infos = root.add_child("serviceInfos");
  for (const ServiceRecord& s : resp.services) infos.children.push_back(encode_service_record(s));
  return xml::serialize(root);
}

std::string encode_business_detail(const BusinessDetailResponse& resp) {
  xml::Element root = message_root("businessDetail");
  root.set_attr("operator", resp.operator_id);
  finish_root(root);
  auto& be = root.add_child("businessEntity");
  be.set_attr("businessKey", resp.business_key);
  add_name(be, resp.name, resp.lang);
  return xml::serialize(root);
}

std::string encode_service_detail(const ServiceDetailResponse& resp) {
  xml::Element root = message_root("serviceDetail");
  root.set_attr("operator", resp.operator_id);
  finish_root(root);
  root.children.push_back(encode_service_record(resp.service));
  return xml::serialize(root);
}

std::string encode_disposition(const DispositionReport& report,
                               std::string_view operator_id) {
  return encode_report(std::to_string(err_code_errno(report.code)),
                       err_code_name(report.code), report.message, operator_id);
}

std::string encode_success(const SuccessReport& report, std::string_view operator_id) {
  return encode_report("0", "E_success", report.message, operator_id);
}

FindBusinessRequest decode_find_business(std::string_view bytes) {
  xml::Element root = xml::parse(bytes);
  checked_root(root);
  if (root.name != "find_business")
    throw ProtocolError("expected <find_business>, got <" + root.name + ">");
  return decode_find_business_el(root);
}

BusinessListResponse decode_business_list(std::string_view bytes) {
  xml::Element root = xml::parse(bytes);
  checked_root(root);
  if (root.name != "businessList")
    throw ProtocolError("expected <businessList>, got <" + root.name + ">");
  return decode_business_list_el(root);
}

Request decode_request(std::string_view bytes) {
  xml::Element root = xml::parse(bytes);
  checked_root(root);
  if (root.name == "find_business") return decode_find_business_el(root);
  if (root.name == "find_service") return decode_find_service_el(root);
  if (root.name == "save_business") return decode_save_business_el(root);
  if (root.name == "save_service") return decode_save_service_el(root);
  if (root.name == "delete_business")
    return DeleteBusinessRequest{attr_or(root, "generic", std::string(kGeneric)),
                                 required_key(root, "businessKey")};
  if (root.name == "delete_service")
    return DeleteServiceRequest{attr_or(root, "generic", std::string(kGeneric)),
                                required_key(root, "serviceKey")};
  throw ProtocolError("unknown request <" + root.name + ">");
}

Response decode_response(std::string_view bytes) {
  xml::Element root = xml::parse(bytes);
  checked_root(root);
  if (root.name == "businessList") return decode_business_list_el(root);
  if (root.name == "serviceList") return decode_service_list_el(root);
  if (root.name == "businessDetail") return decode_business_detail_el(root);
  if (root.name == "serviceDetail") return decode_service_detail_el(root);
  if (root.name == "dispositionReport") {
    auto r = decode_report_el(root);
    if (std::holds_alternative<SuccessReport>(r))
      return std::get<SuccessReport>(r);
    return std::get<DispositionReport>(r);
  }
  throw ProtocolError("unknown response <" + root.name + ">");
}

std::string root_name(std::string_view bytes) { return xml::parse(bytes).name; }

}  // namespace disco::uddi
