package def.dom;
public class SVGFEFuncBElement extends SVGComponentTransferFunctionElement {
    public static SVGFEFuncBElement prototype;
    public SVGFEFuncBElement(){}
}
